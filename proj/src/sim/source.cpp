#include "ocm/source.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <string>

#include "ocm/centroid_psf.hpp"
#include "ocm/error.hpp"
#include "ocm/imaging.hpp"
#include "ocm/special.hpp"

namespace ocm {

const char* to_string(SourceKind k) {
  switch (k) {
    case SourceKind::OcmPairs: return "ocm_pairs";
    case SourceKind::CoherentClassical: return "coherent_classical";
    case SourceKind::IncoherentClassical: return "incoherent_classical";
    case SourceKind::PointSource: return "point_source";
    case SourceKind::FarFieldOcm: return "far_field_ocm";
  }
  return "unknown";
}

SourceKind source_kind_from_string(const std::string& s) {
  for (auto k : {SourceKind::OcmPairs, SourceKind::CoherentClassical, SourceKind::IncoherentClassical,
                 SourceKind::PointSource, SourceKind::FarFieldOcm})
    if (s == to_string(k)) return k;
  fail(ErrorCode::InvalidArgument, "unknown source kind '" + s + "'");
}

int SourceSpec::photons_per_tuple() const {
  switch (kind) {
    case SourceKind::CoherentClassical:
    case SourceKind::IncoherentClassical: return 1;
    default: return n_photons;
  }
}

void SourceSpec::validate() const {
  if (!(pair_rate > 0)) fail(ErrorCode::InvalidArgument, "pair_rate must be positive");
  system.validate();
  density_grid.validate();
  if (n_photons != 2) fail(ErrorCode::InvalidArgument, "the event pipeline simulates photon pairs only (n_photons = 2)");
  if (kind == SourceKind::OcmPairs || kind == SourceKind::PointSource) {
    xi_grid.validate();
    phase_matching.validate();
  }
  if (kind == SourceKind::PointSource && !(point_waist > 0)) fail(ErrorCode::InvalidArgument, "point_waist must be positive");
  if (kind == SourceKind::FarFieldOcm) {
    object_grid.validate();
    if (!(far_field_focal_length > 0) || !(correlation_width >= 0))
      fail(ErrorCode::InvalidArgument, "far-field focal length must be positive and correlation width non-negative");
  }
}

namespace {

class Fnv1a {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= b[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void u64(std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    bytes(b, 8);
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void grid(const GridSpec& g) {
    u64(g.nx);
    u64(g.ny);
    f64(g.dx);
    f64(g.dy);
    f64(g.origin_x);
    f64(g.origin_y);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

void hash_aperture(Fnv1a& h, const Aperture& a) {
  h.u64(a.shape().index());
  h.f64(a.center_x());
  h.f64(a.center_y());
  h.f64(a.pump_waist().value_or(0.0));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SlitShape>) {
          h.u64(static_cast<std::uint64_t>(s.count));
          h.f64(s.line_width);
          h.f64(s.pitch);
          h.f64(s.length);
        } else if constexpr (std::is_same_v<T, RectangleShape>) {
          h.f64(s.width);
          h.f64(s.height);
        } else if constexpr (std::is_same_v<T, GaussianSpotShape>) {
          h.f64(s.waist);
        } else if constexpr (std::is_same_v<T, MaskShape>) {
          h.grid(s.mask.spec());
          for (const auto& v : s.mask.values()) {
            h.f64(v.real());
            h.f64(v.imag());
          }
        }
      },
      a.shape());
}

}  // namespace

std::uint64_t SourceSpec::hash() const {
  Fnv1a h;
  h.u64(static_cast<std::uint64_t>(kind));
  hash_aperture(h, aperture);
  h.f64(system.pupil_radius);
  h.f64(system.object_distance);
  h.f64(system.wavelength);
  h.f64(system.magnification);
  h.f64(system.gaussian() ? std::get<GaussianPupil>(system.pupil).std_dev : 0.0);
  const auto& p = phase_matching;
  for (double v : {p.crystal_length, p.poling_period, p.omega_s, p.omega_i, p.focal_length, p.index_model.A,
                   p.index_model.B, p.index_model.C, p.index_model.D, p.index_model.E, p.index_model.F,
                   p.index_model.reference_temperature_c, p.index_model.temperature_c})
    h.f64(v);
  for (double v : p.index_model.thermal_linear) h.f64(v);
  for (double v : p.index_model.thermal_quadratic) h.f64(v);
  h.u64(static_cast<std::uint64_t>(n_photons));
  h.f64(point_waist);
  h.f64(pair_rate);
  h.grid(density_grid);
  h.grid(xi_grid);
  h.grid(object_grid);
  h.f64(far_field_focal_length);
  h.f64(correlation_width);
  return h.value();
}

PreparedSource::PreparedSource(const SourceSpec& spec) : spec_(spec), hash_(spec.hash()) {
  spec_.validate();
  const auto& sys = spec_.system;
  switch (spec_.kind) {
    case SourceKind::OcmPairs:
      density_ = ocm_image(spec_.aperture, sys, spec_.n_photons, spec_.density_grid);
      break;
    case SourceKind::PointSource:
      density_ = ocm_image(Aperture::gaussian_spot(spec_.point_waist), sys, spec_.n_photons, spec_.density_grid);
      break;
    case SourceKind::CoherentClassical:
      density_ = coherent_image(spec_.aperture, sys, spec_.density_grid);
      break;
    case SourceKind::IncoherentClassical:
      density_ = incoherent_image(spec_.aperture, sys, spec_.density_grid);
      break;
    case SourceKind::FarFieldOcm: {
      const double scale = spec_.far_field_focal_length * sys.wavelength / kTwoPi;
      density_ = far_field_pattern(spec_.aperture, spec_.n_photons, scale, spec_.object_grid, spec_.density_grid);
      break;
    }
  }
  centre_ = std::make_unique<DiscreteSampler2D>(density_);
  if (spec_.kind == SourceKind::OcmPairs || spec_.kind == SourceKind::PointSource) {
    xi_density_ = phase_matching_envelope_grid(spec_.phase_matching, spec_.xi_grid);
    xi_ = std::make_unique<DiscreteSampler2D>(xi_density_);
  }
}

PhotonTuple PreparedSource::draw(Rng& rng) const {
  PhotonTuple t;
  const Point2 c = centre_->sample(rng);
  switch (spec_.kind) {
    case SourceKind::CoherentClassical:
    case SourceKind::IncoherentClassical:
      t.n = 1;
      t.pos[0] = c;
      break;
    case SourceKind::OcmPairs:
    case SourceKind::PointSource: {
      const Point2 xi = xi_->sample(rng);
      const double m = spec_.system.magnification;
      t.n = 2;
      t.pos[0] = {c.x + m * xi.x, c.y + m * xi.y};
      t.pos[1] = {c.x - m * xi.x, c.y - m * xi.y};
      break;
    }
    case SourceKind::FarFieldOcm: {
      double dx = 0.0, dy = 0.0;
      if (spec_.correlation_width > 0.0) {
        std::normal_distribution<double> g(0.0, spec_.correlation_width);
        dx = g(rng);
        dy = g(rng);
      }
      t.n = 2;
      t.pos[0] = {c.x + 0.5 * dx, c.y + 0.5 * dy};
      t.pos[1] = {c.x - 0.5 * dx, c.y - 0.5 * dy};
      break;
    }
  }
  return t;
}

std::vector<PhotonTuple> sample_event_positions(const SourceSpec& src, std::uint64_t seed, std::size_t count) {
  const PreparedSource prepared(src);
  Rng rng(seed);
  std::vector<PhotonTuple> out(count);
  for (auto& t : out) t = prepared.draw(rng);
  return out;
}

}  // namespace ocm

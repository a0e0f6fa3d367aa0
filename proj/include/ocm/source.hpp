#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "ocm/aperture.hpp"
#include "ocm/centroid.hpp"
#include "ocm/detector.hpp"
#include "ocm/imaging_system.hpp"
#include "ocm/phase_matching.hpp"
#include "ocm/sampling.hpp"

namespace ocm {

enum class SourceKind {
  OcmPairs,             // entangled pairs imaged through the lens, centroid ~ |(A*H)(X/m)|^2
  CoherentClassical,    // single photons from |(A*h)(rho/m)|^2
  IncoherentClassical,  // single photons from (|A|^2*|h|^2)(rho/m)
  PointSource,          // OCM pairs from a Gaussian spot of the given waist
  FarFieldOcm,          // pairs whose common position follows |A~(N q)|^2 in a lens focal plane
};

const char* to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string& s);

struct SourceSpec {
  SourceKind kind = SourceKind::OcmPairs;
  Aperture aperture = Aperture::slits(3, 70e-6, 110e-6, 350e-6);
  ImagingSystem system{};
  PhaseMatchingParams phase_matching = PhaseMatchingParams::degenerate(810e-9, 5e-3, 0.05);
  int n_photons = 2;
  double point_waist = 25e-6;
  // Mean tuples (pairs, or single photons for classical kinds) per second at the detector plane.
  double pair_rate = 1e6;
  // Image-plane grid the centroid (or single-photon) density is tabulated on.
  GridSpec density_grid = GridSpec::centered(512, 5.5e-6);
  // Object-plane grid for the phase-matching envelope over xi.
  GridSpec xi_grid = GridSpec::centered(256, 12e-6);
  // Object-plane grid the aperture is sampled on for the far-field transform.
  GridSpec object_grid = GridSpec::centered(256, 4e-6);
  // Far-field lens focal length and the Gaussian std of the in-pair position difference.
  double far_field_focal_length = 0.4;
  double correlation_width = 43.75e-6;

  void validate() const;
  int photons_per_tuple() const;
  // FNV-1a over a canonical byte serialization.
  std::uint64_t hash() const;
};

inline constexpr std::size_t kMaxTupleSize = 4;

// Image-plane positions of one emitted tuple.
struct PhotonTuple {
  std::array<Point2, kMaxTupleSize> pos{};
  std::uint8_t n = 0;
};

// Precomputed sampling tables for a source.
class PreparedSource {
 public:
  explicit PreparedSource(const SourceSpec& spec);

  PhotonTuple draw(Rng& rng) const;
  const SourceSpec& spec() const { return spec_; }
  // Density the tuple centroid (or single photon) is drawn from.
  const FieldGrid& position_density() const { return density_; }
  // Object-plane |envelope|^2 over xi, empty for kinds without one.
  const FieldGrid& xi_density() const { return xi_density_; }
  std::uint64_t hash() const { return hash_; }

 private:
  SourceSpec spec_;
  FieldGrid density_;
  FieldGrid xi_density_;
  std::unique_ptr<DiscreteSampler2D> centre_;
  std::unique_ptr<DiscreteSampler2D> xi_;
  std::uint64_t hash_ = 0;
};

std::vector<PhotonTuple> sample_event_positions(const SourceSpec& src, std::uint64_t seed, std::size_t count);

}  // namespace ocm

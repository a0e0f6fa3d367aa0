#include "ocm/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ocm/acquisition.hpp"
#include "ocm/analysis.hpp"
#include "ocm/centroid_psf.hpp"
#include "ocm/error.hpp"
#include "ocm/event_io.hpp"
#include "ocm/grid_io.hpp"
#include "ocm/imaging.hpp"
#include "ocm/sampling.hpp"
#include "ocm/streaming.hpp"

namespace ocm {
namespace {

namespace fs = std::filesystem;

std::string prepare_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorCode::SinkWriteError, "cannot create output directory '" + out_dir + "': " + ec.message());
  return out_dir;
}

std::string join(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

double um(double metres) { return metres * 1e6; }

FieldGrid intensity_peak_normalized(const FieldGrid& amplitude) {
  FieldGrid g = amplitude.abs2();
  g.normalize_peak();
  return g;
}

FieldGrid peak_normalized_grid(FieldGrid g) {
  g.normalize_peak();
  return g;
}

Profile1D full_projection(const FieldGrid& g) {
  return peak_normalized(cross_section(g, Axis::X, full_band(g.spec(), Axis::Y)));
}

double projection_fwhm(const FieldGrid& intensity) { return width_metrics(full_projection(intensity)).fwhm; }

void save_matrix_csv(const std::string& path, const std::vector<double>& m, int n) {
  std::ofstream os(path, std::ios::binary);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (c) os << ',';
      os << format_number(m[static_cast<std::size_t>(r * n + c)]);
    }
    os << '\n';
  }
  if (!os) fail(ErrorCode::SinkWriteError, "cannot write '" + path + "'");
}

Axis axis_from_config(const RunConfig& cfg) {
  const auto& a = cfg.string("analysis.axis");
  if (a == "x") return Axis::X;
  if (a == "y") return Axis::Y;
  fail(ErrorCode::ConfigError, "'analysis.axis': expected x or y, got '" + a + "'");
}

Axis other(Axis a) { return a == Axis::X ? Axis::Y : Axis::X; }

struct ImagePlaneGeometry {
  Axis axis;
  double band_centre;  // along the summed axis
  double band_half_width;
  double profile_centre;  // along the profile axis
};

ImagePlaneGeometry geometry(const RunConfig& cfg) {
  const double m = cfg.imaging_system().magnification;
  const Axis axis = axis_from_config(cfg);
  const double cx = m * cfg.number("aperture.center_x_m");
  const double cy = m * cfg.number("aperture.center_y_m");
  const double hw = cfg.number("analysis.band_half_width_m");
  if (!(hw > 0)) fail(ErrorCode::ConfigError, "'analysis.band_half_width_m' must be positive");
  return {axis, axis == Axis::X ? cy : cx, hw, axis == Axis::X ? cx : cy};
}

bool slit_target(const RunConfig& cfg, Axis axis) {
  return cfg.string("aperture.shape") == "slits" && axis == Axis::X;
}

void add_width(Report& rep, const Profile1D& p, WidthModel model) {
  try {
    const auto w = width_metrics(p, model);
    rep.add("fwhm_um", um(w.fwhm));
    rep.add("peak_position_um", um(w.peak_position));
    rep.add("fit_model", to_string(w.fit_model));
    if (w.first_zero) rep.add("first_zero_um", um(*w.first_zero));
    if (w.fit_model != WidthModel::None) rep.add("fit_residual", w.fit_residual);
  } catch (const Error& e) {
    rep.add("width_error", std::string(to_string(e.code())));
  }
}

void add_contrast(Report& rep, const Profile1D& p, const RunConfig& cfg, double profile_centre,
                  const std::string& prefix = "") {
  const double m = cfg.imaging_system().magnification;
  try {
    const auto c = slit_contrast(p, static_cast<int>(cfg.integer("aperture.count")), m * cfg.number("aperture.pitch_m"),
                                 profile_centre, cfg.number("analysis.contrast_threshold"));
    rep.add(prefix + "contrast", c.contrast);
    rep.add(prefix + "resolved", c.resolved);
  } catch (const Error& e) {
    rep.add(prefix + "contrast_error", std::string(to_string(e.code())));
    rep.add(prefix + "resolved", false);
  }
}

std::uint64_t n_frames_for(const std::string& events_path, const EventFile& ef) {
  const auto mpath = manifest_path_for(events_path);
  if (fs::exists(mpath)) {
    const auto m = load_manifest(mpath);
    const auto it = m.find("n_frames");
    if (it == m.end()) fail(ErrorCode::FormatError, "manifest '" + mpath + "' has no n_frames");
    const auto hash = m.find("config_hash");
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(detector_config_hash(ef.config)));
    if (hash != m.end() && hash->second != buf)
      fail(ErrorCode::FormatError, "manifest detector hash does not match the event file header");
    return std::stoull(it->second);
  }
  // Without a manifest, trailing empty frames are unknown; count up to the last event.
  return ef.events.empty() ? 0 : ef.events.back().frame_id + 1;
}

}  // namespace

Report cmd_psf(const RunConfig& cfg, const std::string& out_dir) {
  prepare_dir(out_dir);
  const ImagingSystem sys = cfg.imaging_system();
  const int n = static_cast<int>(cfg.integer("ocm.n_photons"));
  if (n < 1) fail(ErrorCode::ConfigError, "'ocm.n_photons' must be >= 1");
  const auto count = cfg.integer("grid.psf_n");
  if (count < 3) fail(ErrorCode::ConfigError, "'grid.psf_n' must be >= 3");
  const GridSpec grid =
      GridSpec::centered(static_cast<std::size_t>(count), cfg.number("grid.psf_spacing_fraction") * sys.characteristic_radius());

  const FieldGrid h = single_lens_psf(sys, grid);
  // The half-wavelength PSF is sampled at half the spacing so it lands on the N = 2 centroid grid.
  const ImagingSystem half = sys.with_wavelength(0.5 * sys.wavelength);
  const FieldGrid h_half = single_lens_psf(half, grid.scaled(0.5));
  const FieldGrid ocm = intensity_peak_normalized(centroid_psf(h, n));
  const FieldGrid classical_centroid = peak_normalized_grid(classical_centroid_psf(h, n));
  const FieldGrid classical = intensity_peak_normalized(h);
  const FieldGrid classical_half = intensity_peak_normalized(h_half);

  const std::string tag = "N" + std::to_string(n);
  const std::vector<std::pair<std::string, const FieldGrid*>> outputs = {
      {"psf_classical", &classical},
      {"psf_classical_half_wavelength", &classical_half},
      {"psf_ocm_" + tag, &ocm},
      {"psf_classical_centroid_" + tag, &classical_centroid},
  };

  Report rep;
  rep.section("system");
  rep.add("wavelength_nm", sys.wavelength * 1e9);
  rep.add("pupil_profile", sys.gaussian() ? "gaussian" : "hard");
  rep.add("n_photons", n);
  rep.add("grid_samples", static_cast<std::int64_t>(grid.nx));
  rep.add("grid_spacing_um", um(grid.dx));
  if (!sys.gaussian()) {
    rep.add("first_zero_um", um(sys.first_zero_radius()));
    rep.add("rayleigh_radius_um", um(sys.rayleigh_radius()));
    rep.add("ocm_first_zero_um", um(sys.first_zero_radius() / n));
  } else {
    rep.add("psf_std_um", um(sys.gaussian_psf_std()));
  }

  double fwhm_ocm = 0.0, fwhm_half = 0.0;
  for (const auto& [name, g] : outputs) {
    save_grid(join(out_dir, name + ".ocmg"), *g);
    const Profile1D p = full_projection(*g);
    save_profile_csv(join(out_dir, name + "_projection.csv"), p);
    const double fwhm = width_metrics(p).fwhm;
    rep.section(name);
    rep.add("fwhm_um", um(fwhm));
    if (name == "psf_ocm_" + tag) fwhm_ocm = fwhm;
    if (name == "psf_classical_half_wavelength") fwhm_half = fwhm;
  }
  rep.section("comparison");
  rep.add("ocm_to_half_wavelength_fwhm_ratio", fwhm_ocm / fwhm_half);
  rep.add("classical_centroid_to_ocm_fwhm_ratio",
          projection_fwhm(classical_centroid) / fwhm_ocm);

  const auto sweep = cfg.integers("ocm.n_sweep");
  std::vector<std::pair<double, double>> quantum, classical_pts;
  rep.section("scaling");
  for (const auto k : sweep) {
    if (k < 1) fail(ErrorCode::ConfigError, "'ocm.n_sweep' entries must be >= 1");
    const int nk = static_cast<int>(k);
    const double fq = projection_fwhm(centroid_psf(h, nk).abs2());
    const double fc = projection_fwhm(classical_centroid_psf(h, nk));
    quantum.emplace_back(nk, fq);
    classical_pts.emplace_back(nk, fc);
    rep.add("ocm_fwhm_um_N" + std::to_string(nk), um(fq));
    rep.add("classical_centroid_fwhm_um_N" + std::to_string(nk), um(fc));
  }
  try {
    const auto q = scaling_fit(quantum);
    const auto c = scaling_fit(classical_pts);
    rep.add("ocm_alpha", q.alpha);
    rep.add("ocm_alpha_ci95_low", q.ci_low);
    rep.add("ocm_alpha_ci95_high", q.ci_high);
    rep.add("classical_centroid_alpha", c.alpha);
    rep.add("classical_centroid_alpha_ci95_low", c.ci_low);
    rep.add("classical_centroid_alpha_ci95_high", c.ci_high);
    rep.add("ocm_scaling", std::fabs(q.alpha - 1.0) < std::fabs(q.alpha - 0.5) ? "heisenberg" : "sql");
  } catch (const Error& e) {
    rep.add("scaling_error", std::string(to_string(e.code())));
  }
  rep.save(join(out_dir, "psf_report.txt"));
  return rep;
}

Report cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
  prepare_dir(out_dir);
  const SourceSpec spec = cfg.source();
  const DetectorConfig det = cfg.detector();
  const PreparedSource src(spec);
  const std::string path = join(out_dir, "events.ocme");
  EventFileWriter writer(path);
  const auto r = run_acquisition(src, det, cfg.number("acquisition.wall_time_s"), cfg.u64("acquisition.seed"), writer);
  const Manifest m = make_manifest(r, spec);
  save_manifest(manifest_path_for(path), m);
  Report rep;
  rep.section("acquisition");
  for (const auto& [k, v] : m) rep.add(k, v);
  return rep;
}

Report cmd_reconstruct(const RunConfig& cfg, const std::string& events_path, const std::string& out_dir) {
  prepare_dir(out_dir);
  const EventFile ef = load_events(events_path);
  const std::uint64_t n_frames = n_frames_for(events_path, ef);
  CoincidenceOptions opt = cfg.coincidence_options();
  opt.window_bins = ef.config.coincidence_window_bins(cfg.number("reconstruction.window_s"));
  const int k = static_cast<int>(cfg.integer("reconstruction.accidental_offset"));
  const bool subtract = cfg.flag("reconstruction.subtract_accidentals");
  const CentroidMode mode = cfg.centroid_mode();

  StreamingReconstructor rec(opt, k, true);
  rec.begin(ef.config, ef.source_hash, n_frames);
  rec.consume(ef.events);
  rec.end();

  const CentroidImage img = rec.image(mode, subtract && n_frames > static_cast<std::uint64_t>(k));
  const FieldGrid values = img.to_grid();
  FieldGrid variance(img.grid(), FieldKind::Real);
  for (std::size_t i = 0; i < img.variance.size(); ++i) variance.values()[i] = img.variance[i];
  save_grid(join(out_dir, "centroid.ocmg"), values);
  save_grid_csv(join(out_dir, "centroid.csv"), values);
  save_grid(join(out_dir, "centroid_variance.ocmg"), variance);
  save_grid(join(out_dir, "singles.ocmg"), rec.singles());
  const int nx = ef.config.n_pixels_x;
  save_matrix_csv(join(out_dir, "joint_x.csv"), joint_correlation_histogram(rec.pairs(), Axis::X, ef.config), nx);
  save_matrix_csv(join(out_dir, "joint_y.csv"), joint_correlation_histogram(rec.pairs(), Axis::Y, ef.config),
                  ef.config.n_pixels_y);

  Report rep;
  rep.section("reconstruction");
  rep.add("n_frames", n_frames);
  rep.add("events", rec.n_events());
  rep.add("pairs", rec.n_pairs());
  rep.add("rejected_by_cut", rec.rejected_by_cut());
  rep.add("multi_pair_frames", rec.multi_pair_frames());
  rep.add("window_bins", opt.window_bins);
  rep.add("min_xi_px", opt.min_xi);
  rep.add("mode", to_string(mode));
  rep.add("accidental_corrected", img.accidental_corrected);
  if (img.accidental_corrected) {
    const auto acc = rec.accidentals();
    rep.add("accidental_offset", acc.offset);
    rep.add("accidental_scale", acc.scale);
    rep.add("accidental_raw_total", acc.raw.total());
    rep.add("accidental_expected_total", acc.scaled.total());
  }
  double total = 0.0;
  for (double v : img.values) total += v;
  rep.add("image_nx", img.nx);
  rep.add("image_ny", img.ny);
  rep.add("image_total", total);
  rep.save(join(out_dir, "reconstruct_report.txt"));
  return rep;
}

Report cmd_analyze(const RunConfig& cfg, const std::vector<std::string>& images, const std::string& out_dir) {
  prepare_dir(out_dir);
  if (images.empty()) fail(ErrorCode::InvalidArgument, "no images to analyze");
  const auto geo = geometry(cfg);
  const WidthModel model = width_model_from_string(cfg.string("analysis.model"));
  Report rep;
  for (const auto& path : images) {
    const FieldGrid g = load_grid(path);
    const Band band = band_around(g.spec(), other(geo.axis), geo.band_centre, geo.band_half_width);
    Profile1D p = cross_section(g, geo.axis, band);
    fs::path vpath(path);
    vpath.replace_filename(vpath.stem().string() + "_variance" + vpath.extension().string());
    if (fs::exists(vpath)) {
      const FieldGrid var = load_grid(vpath.string());
      if (!(var.spec() == g.spec())) fail(ErrorCode::GridMismatch, "variance grid does not match '" + path + "'");
      const Profile1D pv = cross_section(var, geo.axis, band);
      p.sigma.resize(pv.size());
      for (std::size_t i = 0; i < pv.size(); ++i) p.sigma[i] = std::sqrt(std::max(0.0, pv.values[i]));
    }
    const std::string stem = fs::path(path).stem().string();
    save_profile_csv(join(out_dir, "profile_" + stem + ".csv"), p);
    rep.section(stem);
    rep.add("axis", geo.axis == Axis::X ? "x" : "y");
    rep.add("band_rows", static_cast<std::uint64_t>(band.end - band.begin));
    add_width(rep, p, model);
    if (slit_target(cfg, geo.axis)) add_contrast(rep, p, cfg, geo.profile_centre);
  }
  rep.save(join(out_dir, "analyze_report.txt"));
  return rep;
}

Report cmd_compare(const RunConfig& cfg, const std::string& out_dir) {
  prepare_dir(out_dir);
  const auto geo = geometry(cfg);
  const double lambda = cfg.number("system.wavelength_m");
  const DetectorConfig det = cfg.detector();
  CoincidenceOptions opt = cfg.coincidence_options();
  const int k = static_cast<int>(cfg.integer("reconstruction.accidental_offset"));
  const bool subtract = cfg.flag("reconstruction.subtract_accidentals");
  const CentroidMode mode = cfg.centroid_mode();
  const double wall = cfg.number("acquisition.wall_time_s");
  const std::uint64_t seed = cfg.u64("acquisition.seed");
  const bool slits = slit_target(cfg, geo.axis);

  struct ModeSpec {
    const char* name;
    const char* kind;
    double wavelength;
    bool expect_resolved;
  };
  const ModeSpec modes[] = {
      {"ocm", "ocm_pairs", lambda, true},
      {"coherent", "coherent_classical", lambda, false},
      {"coherent_half_wavelength", "coherent_classical", 0.5 * lambda, true},
      {"incoherent", "incoherent_classical", lambda, false},
  };

  Report rep;
  bool ordering = slits;
  for (std::size_t i = 0; i < std::size(modes); ++i) {
    const auto& ms = modes[i];
    RunConfig c = cfg;
    c.set("acquisition.source", std::string("\"") + ms.kind + "\"");
    c.set("system.wavelength_m", format_number(ms.wavelength));
    const SourceSpec spec = c.source();
    const PreparedSource src(spec);
    StreamingReconstructor rec(opt, k, false);
    const auto r = run_acquisition(src, det, wall, derive_seed(seed, i), rec);

    Profile1D measured;
    if (spec.kind == SourceKind::OcmPairs) {
      const CentroidImage img = rec.image(mode, subtract);
      save_grid(join(out_dir, std::string("compare_") + ms.name + ".ocmg"), img.to_grid());
      measured = cross_section(img, geo.axis, band_around(img.grid(), other(geo.axis), geo.band_centre, geo.band_half_width));
    } else {
      const FieldGrid& s = rec.singles();
      save_grid(join(out_dir, std::string("compare_") + ms.name + ".ocmg"), s);
      measured = cross_section(s, geo.axis, band_around(s.spec(), other(geo.axis), geo.band_centre, geo.band_half_width), true);
    }
    const FieldGrid& density = src.position_density();
    const Profile1D expected =
        cross_section(density, geo.axis, band_around(density.spec(), other(geo.axis), geo.band_centre, geo.band_half_width));
    save_profile_csv(join(out_dir, std::string("compare_") + ms.name + "_profile.csv"), measured);
    save_profile_csv(join(out_dir, std::string("compare_") + ms.name + "_analytic_profile.csv"), expected);

    rep.section(ms.name);
    rep.add("source", ms.kind);
    rep.add("wavelength_nm", ms.wavelength * 1e9);
    rep.add("n_frames", r.n_frames);
    rep.add("tuples_emitted", r.tuples_emitted);
    rep.add("events", r.counts.events);
    if (spec.kind == SourceKind::OcmPairs) rep.add("pairs", rec.n_pairs());
    if (slits) {
      add_contrast(rep, measured, cfg, geo.profile_centre);
      add_contrast(rep, expected, cfg, geo.profile_centre, "analytic_");
      const bool resolved = rep.find(ms.name, "resolved") == "true";
      rep.add("expected_resolved", ms.expect_resolved);
      ordering = ordering && resolved == ms.expect_resolved;
    } else {
      add_width(rep, measured, width_model_from_string(cfg.string("analysis.model")));
    }
  }
  rep.section("summary");
  rep.add("matches_expected_ordering", ordering);
  rep.save(join(out_dir, "compare_report.txt"));
  return rep;
}

}  // namespace ocm

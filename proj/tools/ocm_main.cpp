#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "ocm/commands.hpp"
#include "ocm/config.hpp"
#include "ocm/error.hpp"
#include "ocm/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonFlags {
  std::string config;
  std::vector<std::string> overrides;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 0;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  sub->add_option("--set", f.overrides, "override a config key, KEY=VALUE (repeatable)");
  sub->add_option("--out", f.out, "output directory (overrides io.output_dir)");
  sub->add_option("--seed", f.seed, "master seed (overrides acquisition.seed)");
  sub->add_option("--threads", f.threads, "OpenMP thread count, 0 for the runtime default")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optical centroid measurement imaging simulator"};
  app.footer(ocm::config_help_text());
  app.require_subcommand(1);

  CommonFlags flags;
  std::string events;
  std::vector<std::string> images;

  auto* psf = app.add_subcommand("psf", "classical, half-wavelength and centroid PSFs with width scaling");
  auto* simulate = app.add_subcommand("simulate", "simulate an acquisition into events.ocme");
  auto* reconstruct = app.add_subcommand("reconstruct", "centroid image from an event file");
  auto* analyze = app.add_subcommand("analyze", "profiles, widths and slit contrast of OCMG images");
  auto* compare = app.add_subcommand("compare", "OCM vs coherent and incoherent classical imaging");
  for (auto* sub : {psf, simulate, reconstruct, analyze, compare}) add_common(sub, flags);
  reconstruct->add_option("--events", events, "event file (default <out>/events.ocme)");
  analyze->add_option("images", images, "OCMG images (default <out>/centroid.ocmg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  CLI::App* active = app.get_subcommands().front();
  const std::string stage = active->get_name();
  ocm::RunConfig cfg;
  std::string out;
  try {
    cfg = ocm::RunConfig::from_file(flags.config);
    for (const auto& o : flags.overrides) cfg.apply_override(o);
    if (flags.seed) cfg.set("acquisition.seed", std::to_string(*flags.seed));
    out = flags.out.empty() ? cfg.string("io.output_dir") : flags.out;
    if (flags.threads > 0) ocm::set_thread_count(flags.threads);
  } catch (const ocm::Error& e) {
    std::cerr << "config: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    ocm::Report rep;
    if (active == psf) {
      rep = ocm::cmd_psf(cfg, out);
    } else if (active == simulate) {
      rep = ocm::cmd_simulate(cfg, out);
    } else if (active == reconstruct) {
      rep = ocm::cmd_reconstruct(cfg, events.empty() ? out + "/events.ocme" : events, out);
    } else if (active == analyze) {
      if (images.empty()) images.push_back(out + "/centroid.ocmg");
      rep = ocm::cmd_analyze(cfg, images, out);
    } else {
      rep = ocm::cmd_compare(cfg, out);
    }
    std::cout << rep.text();
  } catch (const ocm::Error& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return e.code() == ocm::ErrorCode::ConfigError ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << stage << ": " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

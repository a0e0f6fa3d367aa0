#pragma once

#include <string>
#include <vector>

#include "ocm/config.hpp"
#include "ocm/report.hpp"

namespace ocm {

// Each command writes into out_dir (created if missing) and returns the report it saved.

// Classical PSF at lambda and lambda/2, OCM centroid PSF, classical centroid PSF, widths and N scaling.
Report cmd_psf(const RunConfig& cfg, const std::string& out_dir);

// events.ocme plus its manifest.
Report cmd_simulate(const RunConfig& cfg, const std::string& out_dir);

// Centroid image, singles and joint histograms from an event file.
Report cmd_reconstruct(const RunConfig& cfg, const std::string& events_path, const std::string& out_dir);

// Profiles, widths and slit contrast of OCMG images.
Report cmd_analyze(const RunConfig& cfg, const std::vector<std::string>& images, const std::string& out_dir);

// OCM at lambda, coherent at lambda and lambda/2, incoherent at lambda, all with the same geometry.
Report cmd_compare(const RunConfig& cfg, const std::string& out_dir);

}  // namespace ocm

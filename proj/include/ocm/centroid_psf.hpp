#pragma once

#include <optional>
#include <utility>

#include "ocm/aperture.hpp"
#include "ocm/field_grid.hpp"
#include "ocm/imaging_system.hpp"
#include "ocm/parallel.hpp"

namespace ocm {

// H(X) = N^2 (h * ... * h)(N X). The result keeps h's sample count with spacing dx/N.
FieldGrid centroid_psf(const FieldGrid& h, int n);

// Fourier transform of the amplitude PSF sampled on a wavevector grid.
FieldGrid pupil_transmission(const ImagingSystem& sys, const GridSpec& q_grid);

// H from the pupil: pointwise N-th power, inverse transform, axis divided by N, values times N^2.
// output_origin is in centroid coordinates.
FieldGrid centroid_psf_fourier(const FieldGrid& pupil_q, int n,
                               std::optional<std::pair<double, double>> output_origin = std::nullopt);

// Peak-normalized somb(N * scale * |X|). Hard pupil only.
FieldGrid analytic_centroid_psf_circular(const ImagingSystem& sys, int n, const GridSpec& grid);

// Peak-normalized closed form for either pupil; the Gaussian case is exp(-N |X|^2 / (2 s^2)).
FieldGrid analytic_centroid_psf(const ImagingSystem& sys, int n, const GridSpec& grid);

// |(A * H)(X / m)|^2 on an image-plane centroid grid.
FieldGrid ocm_image(const Aperture& a, const ImagingSystem& sys, int n, const GridSpec& image_grid);

// (|A|^2 * |H|^2)(X / m).
FieldGrid incoherent_ocm_image(const Aperture& a, const ImagingSystem& sys, int n, const GridSpec& image_grid);

// Centroid density of N independent photons: (|h|^2)^{*N}(N X), unit integral.
FieldGrid classical_centroid_psf(const FieldGrid& h, int n);

// |A~(N q)|^2 at pupil-plane positions rho = scale * q. A is sampled on object_grid.
FieldGrid far_field_pattern(const Aperture& a, int n, double scale, const GridSpec& object_grid,
                            const GridSpec& pupil_grid, Exec exec = Exec::Parallel);

// Half-max width of |h| along x through its peak, in samples.
double amplitude_half_width_samples(const FieldGrid& h);

}  // namespace ocm

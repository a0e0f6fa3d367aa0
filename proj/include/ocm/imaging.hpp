#pragma once

#include "ocm/aperture.hpp"
#include "ocm/field_grid.hpp"
#include "ocm/imaging_system.hpp"

namespace ocm {

// Amplitude PSF in object-plane coordinates, h(0) = 1.
FieldGrid single_lens_psf(const ImagingSystem& sys, const GridSpec& grid);

// Same sampling without the extent and spacing checks; used by kernels that size their own grids.
FieldGrid sample_psf(const ImagingSystem& sys, const GridSpec& grid);

// |(A * h)(rho / m)|^2 on an image-plane grid.
FieldGrid coherent_image(const Aperture& a, const ImagingSystem& sys, const GridSpec& image_grid);

// (|A|^2 * |h|^2)(rho / m) on an image-plane grid.
FieldGrid incoherent_image(const Aperture& a, const ImagingSystem& sys, const GridSpec& image_grid);

// Coherent or incoherent image of A through an arbitrary object-plane kernel.
// The kernel lives in object-plane coordinates and must contain a sample at the origin.
FieldGrid image_through_kernel(const Aperture& a, const GridSpec& image_grid, double magnification,
                               const FieldGrid& kernel, bool coherent);

// Centred kernel grid that spans every sample difference of g.
GridSpec kernel_grid_for(const GridSpec& g);

}  // namespace ocm

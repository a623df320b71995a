#pragma once

#include "fracrd/grid.hpp"

namespace fracrd {

/// Two-dimensional DST-I pair on the interior nodes.
///
/// Forward:   F_km = sum_{i=1}^{nx} sum_{j=1}^{ny} U_ij
///                   sin(pi i k/(nx+1)) sin(pi j m/(ny+1))
/// Inverse:   U_ij = (2/(nx+1)) (2/(ny+1)) * (same sum over F)
///
/// Backed by FFTW's RODFT00 kind, which returns 4x the sine sum in 2D, so
/// forward = RODFT00/4 and inverse = RODFT00/((nx+1)(ny+1)). Plans are
/// created with FFTW_ESTIMATE for run-to-run determinism and FFTW_UNALIGNED
/// so execution works on arbitrary caller buffers.
class SineTransform {
 public:
  explicit SineTransform(const Grid2D& g);
  ~SineTransform();
  SineTransform(SineTransform&&) noexcept;
  SineTransform& operator=(SineTransform&&) noexcept;
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  const Grid2D& grid() const { return grid_; }

  /// Raw unnormalized transform (4x the sine sum). in and out must be
  /// distinct buffers of grid().size() doubles. Thread-safe once constructed.
  void raw(const double* in, double* out) const;

  void forward(const double* phys, double* spec) const;
  void inverse(const double* spec, double* phys) const;

 private:
  Grid2D grid_{};
  void* plan_ = nullptr;  // fftw_plan, kept opaque here
};

/// Physical -> spectral. Throws std::invalid_argument on a spectral-tagged
/// or non-finite input.
Field dst1_forward(const Field& f);

/// Spectral -> physical. Throws std::invalid_argument on a physical-tagged
/// or non-finite input.
Field dst1_inverse(const Field& f);

}  // namespace fracrd

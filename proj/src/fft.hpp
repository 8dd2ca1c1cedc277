#pragma once

// Thin RAII wrapper over FFTW real transforms on a Grid. Plans are created with
// FFTW_ESTIMATE on fftw_malloc'd buffers so repeated runs pick the same
// codelets and produce bit-identical output.

#include <array>
#include <complex>
#include <span>
#include <vector>

#include <fftw3.h>

#include "ialpha/field.hpp"

namespace ialpha::detail {

class RealFft {
 public:
  explicit RealFft(const Grid& grid);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t spectrum_size() const { return spectrum_size_; }

  std::vector<std::complex<double>> forward(std::span<const double> in);
  /// Includes the 1/N normalization.
  std::vector<double> inverse(std::span<const std::complex<double>> spectrum);

  /// Signed integer frequency vector of a half-spectrum slot. Nyquist is +n/2.
  std::array<int, 2> frequency(std::size_t slot) const;

 private:
  Grid grid_;
  std::size_t spectrum_size_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_plan_ = nullptr;
  fftw_plan inverse_plan_ = nullptr;
};

/// Periodic convolution of `values` with a kernel given on lattice offsets.
std::vector<double> convolve(const Grid& grid, std::span<const double> values,
                             std::span<const Offset> offsets,
                             std::span<const double> weights);

}  // namespace ialpha::detail

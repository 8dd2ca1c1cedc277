#include "fft.hpp"

#include <algorithm>
#include <new>

namespace ialpha::detail {

RealFft::RealFft(const Grid& grid) : grid_(grid) {
  const int n = grid.n_per_axis;
  const std::size_t half = static_cast<std::size_t>(n / 2 + 1);
  spectrum_size_ = grid.dim == 1 ? half : static_cast<std::size_t>(n) * half;

  real_ = static_cast<double*>(fftw_malloc(sizeof(double) * grid.size()));
  spec_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * spectrum_size_));
  if (real_ == nullptr || spec_ == nullptr) {
    fftw_free(real_);
    fftw_free(spec_);
    throw std::bad_alloc();
  }
  if (grid.dim == 1) {
    forward_plan_ = fftw_plan_dft_r2c_1d(n, real_, spec_, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_1d(n, spec_, real_, FFTW_ESTIMATE);
  } else {
    forward_plan_ = fftw_plan_dft_r2c_2d(n, n, real_, spec_, FFTW_ESTIMATE);
    inverse_plan_ = fftw_plan_dft_c2r_2d(n, n, spec_, real_, FFTW_ESTIMATE);
  }
}

RealFft::~RealFft() {
  fftw_destroy_plan(forward_plan_);
  fftw_destroy_plan(inverse_plan_);
  fftw_free(real_);
  fftw_free(spec_);
}

std::vector<std::complex<double>> RealFft::forward(std::span<const double> in) {
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(forward_plan_);
  std::vector<std::complex<double>> out(spectrum_size_);
  for (std::size_t s = 0; s < spectrum_size_; ++s) {
    out[s] = {spec_[s][0], spec_[s][1]};
  }
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> spectrum) {
  for (std::size_t s = 0; s < spectrum_size_; ++s) {
    spec_[s][0] = spectrum[s].real();
    spec_[s][1] = spectrum[s].imag();
  }
  fftw_execute(inverse_plan_);
  const double scale = 1.0 / static_cast<double>(grid_.size());
  std::vector<double> out(grid_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = real_[i] * scale;
  return out;
}

std::array<int, 2> RealFft::frequency(std::size_t slot) const {
  const int n = grid_.n_per_axis;
  if (grid_.dim == 1) return {static_cast<int>(slot), 0};
  const int half = n / 2 + 1;
  const int row = static_cast<int>(slot) / half;
  const int col = static_cast<int>(slot) - row * half;
  return {row <= n / 2 ? row : row - n, col};
}

std::vector<double> convolve(const Grid& grid, std::span<const double> values,
                             std::span<const Offset> offsets,
                             std::span<const double> weights) {
  std::vector<double> kernel(grid.size(), 0.0);
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    kernel[shifted(grid, 0, offsets[i].d0, offsets[i].d1)] += weights[i];
  }
  RealFft fft(grid);
  auto fhat = fft.forward(values);
  const auto khat = fft.forward(kernel);
  for (std::size_t s = 0; s < fhat.size(); ++s) fhat[s] *= khat[s];
  return fft.inverse(fhat);
}

}  // namespace ialpha::detail

#include "oamcgh/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace oamcgh {

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Moves the centered origin (n/2) to index 0, or back when !to_origin.
void circular_shift(std::span<cplx> data, int rows, int cols, bool to_origin) {
  const int sr = to_origin ? -(rows / 2) : rows / 2;
  const int sc = to_origin ? -(cols / 2) : cols / 2;
  std::vector<cplx> tmp(data.begin(), data.end());
  for (int r = 0; r < rows; ++r) {
    const int rr = ((r + sr) % rows + rows) % rows;
    for (int c = 0; c < cols; ++c) {
      const int cc = ((c + sc) % cols + cols) % cols;
      data[static_cast<std::size_t>(rr) * cols + cc] = tmp[static_cast<std::size_t>(r) * cols + c];
    }
  }
}

}  // namespace

void centered_dft(std::span<cplx> data, int rows, int cols, FftDirection direction) {
  if (data.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("centered_dft: buffer size does not match grid");
  }
  circular_shift(data, rows, cols, true);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(rows, cols, buf, buf,
                            direction == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("centered_dft: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double norm = 1.0 / std::sqrt(static_cast<double>(rows) * cols);
  for (auto& v : data) v *= norm;
  circular_shift(data, rows, cols, false);
}

}  // namespace oamcgh

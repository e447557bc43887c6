#include "oamcgh/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace oamcgh {

GridGeometry::GridGeometry(int rows, int cols, double aperture_diameter)
    : rows_(rows), cols_(cols), diameter_(aperture_diameter) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("grid: rows and cols must be positive");
  }
  if (!std::isfinite(aperture_diameter) || aperture_diameter < kMinApertureDiameter) {
    throw std::invalid_argument("grid: aperture diameter must be at least 64 samples, got " +
                                std::to_string(aperture_diameter));
  }
  // Largest radius whose disk stays on the grid.
  const int fit = std::min({center_row(), rows - 1 - center_row(), center_col(),
                            cols - 1 - center_col()});
  if (aperture_radius() > fit + 0.5) {
    throw std::invalid_argument("grid: aperture of diameter " + std::to_string(aperture_diameter) +
                                " does not fit inside a " + std::to_string(rows) + "x" +
                                std::to_string(cols) + " grid");
  }
}

GridGeometry GridGeometry::standard() { return GridGeometry(768, 1024, 691.0); }

GridGeometry GridGeometry::with_fraction(int rows, int cols, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("grid: aperture fraction must lie in (0, 1]");
  }
  return GridGeometry(rows, cols, std::round(fraction * std::min(rows, cols)));
}

double GridGeometry::theta(int row, int col) const { return std::atan2(y(row), x(col)); }

bool GridGeometry::inside(int row, int col) const {
  const double r = aperture_radius();
  const double xx = x(col);
  const double yy = y(row);
  return xx * xx + yy * yy <= r * r;
}

std::size_t GridGeometry::aperture_count() const {
  std::size_t n = 0;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) n += inside(r, c) ? 1 : 0;
  return n;
}

double ComplexField::total_power() const {
  double p = 0.0;
  for (const auto& v : values_) p += std::norm(v);
  return p;
}

void ComplexField::apply_aperture() {
  for (int r = 0; r < rows(); ++r)
    for (int c = 0; c < cols(); ++c)
      if (!geometry_.inside(r, c)) at(r, c) = 0.0;
}

RealGrid amplitude_of(const ComplexField& field) {
  RealGrid out(field.geometry());
  for (std::size_t i = 0; i < field.size(); ++i) out[i] = std::abs(field[i]);
  return out;
}

RealGrid phase_of(const ComplexField& field) {
  RealGrid out(field.geometry());
  for (std::size_t i = 0; i < field.size(); ++i)
    out[i] = std::abs(field[i]) < 1e-12 ? 0.0 : std::arg(field[i]);
  return out;
}

}  // namespace oamcgh

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace oamcgh {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Sampled pupil geometry. Pixel (row, col) maps to Cartesian coordinates
// x = col - cols/2 (right), y = rows/2 - row (up); theta = atan2(y, x).
// The aperture is the closed disk x^2 + y^2 <= (D/2)^2 around that center.
class GridGeometry {
 public:
  static constexpr double kMinApertureDiameter = 64.0;

  GridGeometry(int rows, int cols, double aperture_diameter);

  // 768x1024 with a 691-sample aperture (90% of the short side).
  static GridGeometry standard();
  // Aperture diameter = round(fraction * min(rows, cols)).
  static GridGeometry with_fraction(int rows, int cols, double fraction);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return static_cast<std::size_t>(rows_) * cols_; }
  double aperture_diameter() const { return diameter_; }
  double aperture_radius() const { return 0.5 * diameter_; }
  int center_row() const { return rows_ / 2; }
  int center_col() const { return cols_ / 2; }

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * cols_ + col;
  }
  double x(int col) const { return col - center_col(); }
  double y(int row) const { return center_row() - row; }
  double theta(int row, int col) const;
  bool inside(int row, int col) const;

  // Number of samples inside the aperture.
  std::size_t aperture_count() const;

  bool operator==(const GridGeometry&) const = default;

 private:
  int rows_;
  int cols_;
  double diameter_;
};

// Row-major sample grid tied to a geometry.
template <typename T>
class Grid {
 public:
  explicit Grid(GridGeometry geometry, T fill = T{})
      : geometry_(geometry), values_(geometry.size(), fill) {}

  const GridGeometry& geometry() const { return geometry_; }
  int rows() const { return geometry_.rows(); }
  int cols() const { return geometry_.cols(); }
  std::size_t size() const { return values_.size(); }

  T& at(int row, int col) { return values_[geometry_.index(row, col)]; }
  const T& at(int row, int col) const { return values_[geometry_.index(row, col)]; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

 protected:
  GridGeometry geometry_;
  std::vector<T> values_;
};

using RealGrid = Grid<double>;

enum class Plane { pupil, far_field };

class ComplexField : public Grid<cplx> {
 public:
  explicit ComplexField(GridGeometry geometry, Plane plane = Plane::pupil)
      : Grid<cplx>(geometry), plane_(plane) {}

  Plane plane() const { return plane_; }
  void set_plane(Plane plane) { plane_ = plane; }

  // Sum of |value|^2 over every sample.
  double total_power() const;
  // Zeroes every sample outside the aperture.
  void apply_aperture();

 private:
  Plane plane_;
};

RealGrid amplitude_of(const ComplexField& field);
// arg() of every sample; 0 where the amplitude is below 1e-12.
RealGrid phase_of(const ComplexField& field);

}  // namespace oamcgh

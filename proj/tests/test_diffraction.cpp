#include <cmath>
#include <random>

#include "doctest.h"
#include "oamcgh/bessel.hpp"
#include "oamcgh/cgh_synth.hpp"
#include "oamcgh/diffraction.hpp"
#include "oamcgh/fourier.hpp"
#include "oamcgh/oam_states.hpp"
#include "test_support.hpp"

using namespace oamcgh;

namespace {

// Direct O(N^2) centered DFT; the oracle for the FFT-backed transform.
std::vector<cplx> naive_centered_dft(const std::vector<cplx>& in, int rows, int cols, double sign) {
  std::vector<cplx> out(in.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(rows) * cols);
  for (int kr = 0; kr < rows; ++kr)
    for (int kc = 0; kc < cols; ++kc) {
      cplx sum = 0.0;
      for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
          const double ph = kTwoPi * (static_cast<double>((kr - rows / 2) * (r - rows / 2)) / rows +
                                      static_cast<double>((kc - cols / 2) * (c - cols / 2)) / cols);
          sum += in[r * cols + c] * std::polar(1.0, sign * ph);
        }
      out[kr * cols + kc] = sum * norm;
    }
  return out;
}

ComplexField constant_field(const GridGeometry& g, cplx v) {
  ComplexField f(g);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.inside(r, c)) f.at(r, c) = v;
  return f;
}

RealGrid constant(const GridGeometry& g, double v) {
  RealGrid out(g);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.inside(r, c)) out.at(r, c) = v;
  return out;
}

std::pair<int, int> peak_bin(const ComplexField& f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (std::abs(f[i]) > std::abs(f[best])) best = i;
  return {static_cast<int>(best) / f.cols(), static_cast<int>(best) % f.cols()};
}

double max_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Takeda demodulation: the +1 sideband of a vertical-tilt interferogram
// carries the field itself.
ComplexField sideband(const RealGrid& fringes, double tilt) {
  ComplexField f(fringes.geometry());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = fringes[i];
  const auto spec = order_spec(1, ReferenceWave{tilt, 1.0, TiltAxis::vertical}, f.geometry());
  return back_propagate(isolate_order(far_field(f), spec));
}

}  // namespace

TEST_CASE("analytic order amplitude") {
  CHECK(std::abs(analytic_order_amplitude(-1, 1.0, 1.8412) - 0.58187) < 1e-4);
  CHECK(std::abs(std::pow(analytic_order_amplitude(-1, 1.0, 1.8412), 2) - 0.339) < 1e-3);
  CHECK(analytic_order_amplitude(0, 0.0, 2.7) == 1.0);
  CHECK(analytic_order_amplitude(-1, 0.4, 1.5) == doctest::Approx(bessel_j(1, 0.6)));
  CHECK(analytic_order_amplitude(1, 0.4, 1.5) == doctest::Approx(-bessel_j(1, 0.6)));
  CHECK(analytic_order_amplitude(2, 0.9, 3.0) == doctest::Approx(bessel_jn(2, 2.7)));
}

TEST_CASE("analytic order phase") {
  CHECK(analytic_order_phase(-1, 0.37, 0.0, 1.72, 5.0) == doctest::Approx(0.37));
  CHECK(analytic_order_phase(-1, 0.0, 1.0, 1.84, 0.0) == doctest::Approx(0.92));
  CHECK(analytic_order_phase(1, 0.0, 0.0, 1.0, kPi) == doctest::Approx(kTwoPi));
}

TEST_CASE("modulo-2pi sinc weights") {
  const auto w = modulo2pi_order_weights(-3, 4);
  REQUIRE(w.size() == 8);
  for (int m = -3; m <= 4; ++m) {
    if (m == 1) CHECK(w[m + 3] == 1.0);
    else CHECK(std::abs(w[m + 3]) < 1e-15);
  }
  const auto half = modulo2pi_order_weights(0, 1, 0.5);
  CHECK(half[0] == doctest::Approx(std::sin(kPi * 0.5) / (kPi * 0.5)));
  CHECK_THROWS(modulo2pi_order_weights(2, 1));
}

TEST_CASE("numeric azimuthal coefficients match the sinc series") {
  for (int l : {1, 2, 3, -2})
    for (double depth : {1.0, 0.5, 0.8}) {
      const auto num = modulo2pi_numeric_weights(l, -4, 4, depth);
      const auto ana = modulo2pi_order_weights(-4, 4, depth);
      for (std::size_t k = 0; k < num.size(); ++k) CHECK(std::abs(num[k] - ana[k]) < 1e-3);
    }
  CHECK_THROWS(modulo2pi_numeric_weights(0, -1, 1));
}

TEST_CASE("Jacobi-Anger truncation") {
  const GridGeometry g(96, 128, 80);
  const HologramFunction grating = build_hologram(constant(g, 1.0), RealGrid(g), ReferenceWave{20},
                                                  HologramParams::from_sigma_prime(1.84));
  CHECK(jacobi_anger_check(grating, 10) < 1e-6);
  CHECK(jacobi_anger_check(grating, 1) > 0.1);
  const HologramFunction flat =
      build_hologram(constant(g, 1.0), RealGrid(g), {}, HologramParams::from_sigma(0.0));
  CHECK(jacobi_anger_check(flat, 0) < 1e-15);
  CHECK_THROWS(jacobi_anger_check(flat, -1));

  SUBCASE("error is nonincreasing in M for random recordings") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> sp(0.2, 3.83);
    for (int trial = 0; trial < 4; ++trial) {
      const ImaxMode mode = trial % 2 ? ImaxMode::grid_max : ImaxMode::analytic;
      const HologramFunction h = build_hologram(
          testing::random_smooth_profile(g, rng), testing::random_smooth_phase(g, rng),
          ReferenceWave{30}, HologramParams::from_sigma_prime(sp(rng), mode));
      double prev = 1e300;
      for (int m = 0; m <= 14; ++m) {
        const double e = jacobi_anger_check(h, m);
        CHECK(e <= prev * (1 + 1e-12) + 1e-15);
        prev = e;
      }
      // The dropped orders bound the error: sum_{|m| > 10} |J_m(sigma')|.
      double tail = 0;
      for (int m = 11; m < 40; ++m) tail += 2 * std::abs(bessel_jn(m, h.sigma_prime));
      const double e10 = jacobi_anger_check(h, 10);
      CHECK(e10 <= tail + 1e-13);
      if (h.sigma_prime <= 2.5) CHECK(e10 < 1e-6);
    }
  }
}

TEST_CASE("centered_dft matches the naive DFT on even and odd sizes") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> n(0, 1);
  for (auto [rows, cols] : {std::pair{6, 10}, std::pair{7, 5}, std::pair{8, 9}, std::pair{1, 12}}) {
    std::vector<cplx> x(rows * cols);
    for (auto& v : x) v = cplx(n(rng), n(rng));
    for (auto [dir, sign] : {std::pair{FftDirection::forward, -1.0}, std::pair{FftDirection::inverse, 1.0}}) {
      std::vector<cplx> y = x;
      centered_dft(y, rows, cols, dir);
      const auto ref = naive_centered_dft(x, rows, cols, sign);
      for (std::size_t i = 0; i < y.size(); ++i) CHECK(std::abs(y[i] - ref[i]) < 1e-12);
    }
  }
  std::vector<cplx> bad(10);
  CHECK_THROWS(centered_dft(bad, 3, 4, FftDirection::forward));
}

TEST_CASE("far_field is unitary") {
  std::mt19937_64 rng(1);
  const GridGeometry g(96, 128, 80);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexField x = testing::random_field(g, rng);
    const ComplexField X = far_field(x);
    CHECK(X.plane() == Plane::far_field);
    CHECK(std::abs(X.total_power() - x.total_power()) < 1e-10 * x.total_power());
    const ComplexField back = back_propagate(X);
    CHECK(back.plane() == Plane::pupil);
    CHECK(max_diff(back, x) < 1e-10);
  }
  CHECK_THROWS(back_propagate(testing::random_field(g, rng)));
  CHECK_THROWS(far_field(testing::random_field(g, rng, Plane::far_field)));
}

TEST_CASE("far-field peaks: disk on axis, tilt displaced by N cols / D") {
  const GridGeometry g(128, 256, 100);
  const auto disk = peak_bin(far_field(constant_field(g, 1.0)));
  CHECK(disk.first == g.center_row());
  CHECK(disk.second == g.center_col());

  const double tilt = 20;
  ComplexField t(g);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      if (g.inside(r, c)) t.at(r, c) = std::polar(1.0, kTwoPi * tilt * g.x(c) / g.aperture_diameter());
  const auto p = peak_bin(far_field(t));
  CHECK(p.first == g.center_row());
  CHECK(std::abs(p.second - g.center_col() - tilt * g.cols() / g.aperture_diameter()) <= 0.5 + 1e-9);
}

TEST_CASE("order_spec geometry") {
  const GridGeometry g = GridGeometry::standard();
  const auto h = order_spec(-1, ReferenceWave{100}, g);
  CHECK(h.offset_bins == doctest::Approx(100.0 * 1024 / 691));
  CHECK(h.window_width_bins == doctest::Approx(100.0 * 1024 / 691));
  const auto v = order_spec(-1, ReferenceWave{100, 1.0, TiltAxis::vertical}, g);
  CHECK(v.offset_bins == doctest::Approx(-100.0 * 768 / 691));
  CHECK(order_spec(2, ReferenceWave{10}, g).offset_bins == doctest::Approx(-20.0 * 1024 / 691));
  CHECK_THROWS(order_spec(-1, ReferenceWave{0}, g));
}

TEST_CASE("isolate_order") {
  const GridGeometry g(66, 130, 64);

  SUBCASE("off-center delta moves to the center bin") {
    ComplexField far(g, Plane::far_field);
    far.at(g.center_row() + 5, g.center_col() + 20) = cplx(0.3, -0.4);
    const ComplexField out = isolate_order(far, OrderSpec{-1, 20.0, 8.0, TiltAxis::horizontal});
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) {
        const cplx expect = (r == g.center_row() + 5 && c == g.center_col()) ? cplx(0.3, -0.4) : 0.0;
        CHECK(std::abs(out.at(r, c) - expect) < 1e-14);
      }
  }
  SUBCASE("the other order is suppressed") {
    ComplexField far(g, Plane::far_field);
    far.at(g.center_row(), g.center_col() + 20) = 1.0;
    far.at(g.center_row() + 3, g.center_col() - 20) = 2.0;
    const double before = far.total_power();
    ComplexField out = isolate_order(far, OrderSpec{-1, -20.0, 16.0, TiltAxis::horizontal});
    CHECK(std::abs(out.at(g.center_row() + 3, g.center_col()) - 2.0) < 1e-13);
    out.at(g.center_row() + 3, g.center_col()) = 0.0;
    CHECK(out.total_power() < 1e-20 * before);
  }
  SUBCASE("fractional offset demodulates the windowed band exactly") {
    std::mt19937_64 rng(17);
    const ComplexField far = testing::random_field(g, rng, Plane::far_field);
    const OrderSpec spec{-1, 13.37, 9.5, TiltAxis::horizontal};
    ComplexField windowed = far;
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c) {
        const double k = c - g.cols() / 2;
        if (k < spec.offset_bins - 4.75 || k >= spec.offset_bins + 4.75) windowed.at(r, c) = 0.0;
      }
    const ComplexField ref = back_propagate(windowed);
    ComplexField got = back_propagate(isolate_order(far, spec));
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        got.at(r, c) *= std::polar(1.0, kTwoPi * spec.offset_bins * (c - g.cols() / 2) / g.cols());
    CHECK(max_diff(got, ref) < 1e-12);
  }
  SUBCASE("windows outside the grid throw") {
    const ComplexField far(g, Plane::far_field);
    CHECK_THROWS_AS(isolate_order(far, OrderSpec{-1, 62.0, 10.0, TiltAxis::horizontal}), std::out_of_range);
    CHECK_THROWS_AS(isolate_order(far, OrderSpec{-1, -30.0, 10.0, TiltAxis::vertical}), std::out_of_range);
    CHECK_THROWS_AS(isolate_order(far, OrderSpec{-1, 0.0, 0.0, TiltAxis::horizontal}), std::out_of_range);
    CHECK_THROWS_AS(isolate_order(ComplexField(g), OrderSpec{-1, 0.0, 4.0}), std::invalid_argument);
  }
}

TEST_CASE("isolated m = -1 power of a constant grating matches J1^2") {
  const GridGeometry g = GridGeometry::standard();
  for (double s : {0.8, 1.72, 3.0})
    for (double tilt : {50.0, 100.0}) {
      const HologramFunction h = build_hologram(constant(g, 1.0), RealGrid(g), ReferenceWave{tilt},
                                                HologramParams::from_sigma_prime(s));
      const ComplexField t = slm_transmittance(h);
      const ComplexField order = isolate_order(far_field(t), order_spec(-1, h.reference, g));
      const double ratio = order.total_power() / t.total_power();
      const double expect = std::pow(bessel_j(1, s), 2);
      CHECK(std::abs(ratio / expect - 1.0) < 0.01);
    }
}

TEST_CASE("pipeline on pure states and on c3 at a coarse grid") {
  const MubTable t = build_mub_tables();
  const GridGeometry g = GridGeometry::standard();
  const auto pure = simulate_pipeline(t.find("a"), 1.72, 100, true, g);
  CHECK(pure.report.probability >= 0.99);
  CHECK(pure.order.offset_bins == doctest::Approx(100.0 * 1024 / 691));

  const GridGeometry small(192, 256, 172);
  // 30 waves keeps the aliased m = +-3.. orders out of the window at this size.
  const auto c3 = simulate_pipeline(t.find("c3"), 1.72, 30, true, small);
  CHECK(c3.report.probability > 0.97);
  CHECK(c3.report.probability <= 1.0 + 1e-9);
  CHECK(c3.report.state == t.find("c3").label());
  CHECK(c3.report.precondition);

  const auto vertical = simulate_pipeline(t.find("c3"), 1.72, 30, true, small,
                                          PipelineOptions{ImaxMode::analytic, TiltAxis::vertical});
  CHECK(vertical.report.probability > 0.97);

  const auto gridmax = simulate_pipeline(t.find("c3"), 1.72, 30, false, small,
                                         PipelineOptions{ImaxMode::grid_max});
  CHECK(gridmax.report.probability > 0.8);

  CHECK_THROWS(simulate_pipeline(t.find("c3"), 2.5, 50, true, small));
  CHECK_THROWS(simulate_pipeline(t.find("c3"), 1.72, 0, false, small));
}

TEST_CASE("pipeline compensates a known SLM surface error") {
  const MubTable t = build_mub_tables();
  const GridGeometry g(192, 256, 172);
  RealGrid w(g);
  for (int r = 0; r < g.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c)
      w.at(r, c) = 0.25 * std::sin(0.03 * g.x(c) + 0.4) * std::cos(0.02 * g.y(r));

  const auto& c3 = t.find("c3");
  const double clean = simulate_pipeline(c3, 1.72, 30, true, g).report.probability;
  PipelineOptions aberrated;
  aberrated.slm_surface_error = w;
  const double bad = simulate_pipeline(c3, 1.72, 30, true, g, aberrated).report.probability;
  PipelineOptions compensated = aberrated;
  compensated.wfe_map = w;
  const double fixed = simulate_pipeline(c3, 1.72, 30, true, g, compensated).report.probability;
  CHECK(bad < clean - 0.05);
  // Only the other orders still carry the error; their leakage into the
  // window is all that remains.
  CHECK(std::abs(clean - fixed) < 0.01 * (clean - bad));
}

TEST_CASE("synthetic interferograms") {
  const GridGeometry g(256, 256, 200);
  const MubTable t = build_mub_tables();

  SUBCASE("constant field gives exactly 10 straight fringes") {
    for (auto axis : {InterferogramAxis::vertical, InterferogramAxis::horizontal}) {
      const RealGrid i = synth_interferogram(constant_field(g, 1.0), 10, axis);
      for (int offset : {-30, 0, 30}) {
        std::vector<double> line;
        for (int k = 0; k < 256; ++k) {
          const int r = axis == InterferogramAxis::vertical ? k : g.center_row() + offset;
          const int c = axis == InterferogramAxis::vertical ? g.center_col() + offset : k;
          if (std::hypot(g.x(c), g.y(r)) <= 100 && g.inside(r, c)) line.push_back(i.at(r, c));
        }
        // Through the center the chord spans the full diameter.
        if (offset == 0) CHECK(testing::upward_crossings(line, 0.5) == 10);
      }
      double lo = 1, hi = 0;
      for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c)
          if (g.inside(r, c)) {
            lo = std::min(lo, i.at(r, c));
            hi = std::max(hi, i.at(r, c));
          }
      CHECK(hi == doctest::Approx(1.0));
      CHECK(lo < 1e-3);
    }
  }
  SUBCASE("zero field gives a uniform reference") {
    const RealGrid i = synth_interferogram(ComplexField(g), 10, InterferogramAxis::vertical);
    for (int r = 0; r < g.rows(); ++r)
      for (int c = 0; c < g.cols(); ++c)
        CHECK(i.at(r, c) == doctest::Approx(g.inside(r, c) ? 1.0 : 0.0));
  }
  SUBCASE("vortex field shows a fork: one extra fringe on one side of the core") {
    const ComplexField vortex = sample_state_on_grid(t.find("a"), g);
    const RealGrid i = synth_interferogram(vortex, 10, InterferogramAxis::vertical);
    auto column_count = [&](int c) {
      std::vector<double> line;
      for (int r = 0; r < g.rows(); ++r)
        if (g.inside(r, c)) line.push_back(i.at(r, c));
      return testing::upward_crossings(line, 0.5);
    };
    const int left = column_count(g.center_col() - 20);
    const int right = column_count(g.center_col() + 20);
    CHECK(std::abs(left - right) == 1);
    CHECK(std::abs(testing::winding_number(sideband(i, 10), 20)) == 1);

    const RealGrid plain = synth_interferogram(constant_field(g, 1.0), 10, InterferogramAxis::vertical);
    CHECK(testing::winding_number(sideband(plain, 10), 20) == 0);
    const RealGrid c3 = synth_interferogram(sample_state_on_grid(t.find("c3"), g), 10,
                                            InterferogramAxis::vertical);
    CHECK(testing::winding_number(sideband(c3, 10), 20) == 0);
  }
  CHECK_THROWS(synth_interferogram(ComplexField(g, Plane::far_field), 10, InterferogramAxis::vertical));
}

#include "oamcgh/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace oamcgh {

namespace {

constexpr double kSeriesLimit = 8.0;

// Ascending series; x >= 0, n >= 0. Terms peak near k = x/2, so for x <= 8
// cancellation costs at most two digits.
double series_jn(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  const double q = -half * half;
  double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<double>(k) * (k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's backward recurrence normalized by J0 + 2 sum J_2k = 1; x > 0.
double miller_jn(int n, double x) {
  int start = static_cast<int>(std::max<double>(n, x)) + 40;
  if (start % 2 != 0) ++start;
  const double two_over_x = 2.0 / x;
  double next = 0.0;     // J_{k+1}
  double current = 1e-30;  // J_k
  double norm = 0.0;
  double wanted = 0.0;
  for (int k = start; k > 0; --k) {
    const double prev = k * two_over_x * current - next;  // J_{k-1}
    next = current;
    current = prev;
    if (k - 1 == n) wanted = current;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
    if (std::abs(current) > 1e250) {
      current *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
      wanted *= 1e-250;
    }
  }
  norm += current;  // J0
  return wanted / norm;
}

}  // namespace

double bessel_jn(int n, double x) {
  if (!(std::abs(x) <= kBesselMaxArgument)) {
    throw std::domain_error("cgh-synth: bessel: |x| must be <= 20, got " + std::to_string(x));
  }
  double sign = 1.0;
  const int order = std::abs(n);
  if (n < 0 && order % 2 != 0) sign = -sign;
  if (x < 0.0) {
    x = -x;
    if (order % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  const double v = x <= kSeriesLimit ? series_jn(order, x) : miller_jn(order, x);
  return sign * v;
}

double bessel_j(int order, double x) {
  if (order != 0 && order != 1) {
    throw std::domain_error("bessel_j: order must be 0 or 1, got " + std::to_string(order));
  }
  return bessel_jn(order, x);
}

}  // namespace oamcgh

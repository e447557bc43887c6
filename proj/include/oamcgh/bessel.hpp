#pragma once

namespace oamcgh {

// Validated argument range of the Bessel routines.
inline constexpr double kBesselMaxArgument = 20.0;

// First maximum of J1 and its value; past this argument J1 stops being
// monotonic.
inline constexpr double kJ1PeakArgument = 1.8411837813406593;
inline constexpr double kJ1PeakValue = 0.58186522428159638;

// J_order(x) for order 0 or 1. Throws std::domain_error for |x| > 20 or any
// other order.
double bessel_j(int order, double x);

// J_n(x) for any integer n (negative orders via J_{-n} = (-1)^n J_n).
// Throws std::domain_error for |x| > 20.
double bessel_jn(int n, double x);

}  // namespace oamcgh

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace eulertrunc {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// psi(x) for x > 0: upward recurrence to x + n >= 10, then the asymptotic series.
double digamma(double x);

// psi(a/q) for a = 0..q; slot 0 is unused (set to NaN).
std::vector<double> digamma_table(std::uint64_t q);

// zeta(s, a) by Euler-Maclaurin. s != 1, a > 0.
double hurwitz_zeta(double s, double a);

// q^{-s} zeta(s, a/q) = sum_{n = a mod q, n >= a} n^{-s}, without forming
// q^{-s} and zeta(s, a/q) separately (no overflow at large s).
double hurwitz_residue_sum(double s, std::uint64_t a, std::uint64_t q);

inline double riemann_zeta(double s) { return hurwitz_zeta(s, 1.0); }

// Gamma(z) off the poles. Lanczos (g = 7, 9 terms), reflection for Re z < 1/2.
std::complex<double> complex_gamma(std::complex<double> z);
std::complex<double> log_gamma(std::complex<double> z);

}  // namespace eulertrunc

#pragma once

#include <complex>

#include "eulertrunc/lfunc_model.hpp"
#include "eulertrunc/primes.hpp"

namespace eulertrunc {

// Vertical line Re z = c, truncated to |Im z| <= T, trapezoid step h.
struct ContourSpec {
  double c = 1.25;
  double T = 100.0;
  double h = 0.01;
};

// Throws DomainError unless c > 0, T > 0 and h <= min(0.05, 1/(4|log v| + 1)).
void validate_contour(const ContourSpec& spec, double v);

// (1/2 pi i) int_{(c)} w^{-z} Gamma(z) dz, which equals e^{-w}.
std::complex<double> mellin_scalar(double w, const ContourSpec& spec);

struct ContourResult {
  std::complex<double> value;
  std::uint64_t prime_cutoff = 0;  // Dirichlet series of F'/F summed over primes up to here
  double series_tail = 0.0;        // bound on the dropped part of F'/F on the line
};

// (1/2 pi i) int_{(c)} (F'/F)(u + z) v^z Gamma(z) dz with
//   (F'/F)(w) = -sum_{p > cutoff} sum_l d_p(l) log p p^{-l w}.
// Requires u + c > 1.05.
ContourResult contour_lambda_integral_detailed(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                               const ContourSpec& spec);
std::complex<double> contour_lambda_integral(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                             const ContourSpec& spec);

}  // namespace eulertrunc

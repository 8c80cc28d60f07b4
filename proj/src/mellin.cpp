#include "eulertrunc/mellin.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "eulertrunc/errors.hpp"
#include "eulertrunc/special.hpp"
#include "eulertrunc/summation.hpp"

namespace eulertrunc {

namespace {

constexpr double kSeriesTail = 1e-10;
constexpr double kWeightedTail = 1e-8;
constexpr double kNegligibleWeight = 1e-22;
constexpr std::uint64_t kMaxSeriesPrime = 100'000'000;
constexpr int kResync = 256;

struct Nodes {
  std::vector<double> y;
  std::vector<std::complex<double>> w;  // (h / 2 pi) * trapezoid weight * integrand factor
};

// Nodes y_k = -T + k h and weights for x^{z} Gamma(z) along Re z = c.
Nodes line_nodes(const ContourSpec& spec, double log_x) {
  const auto n = static_cast<std::int64_t>(std::llround(2.0 * spec.T / spec.h));
  Nodes nd;
  nd.y.reserve(n + 1);
  nd.w.reserve(n + 1);
  for (std::int64_t k = 0; k <= n; ++k) {
    const double y = -spec.T + static_cast<double>(k) * spec.h;
    const std::complex<double> z{spec.c, y};
    double t = spec.h / (2.0 * std::numbers::pi);
    if (k == 0 || k == n) t *= 0.5;
    nd.y.push_back(y);
    nd.w.push_back(t * std::exp(z * log_x + log_gamma(z)));
  }
  return nd;
}

}  // namespace

void validate_contour(const ContourSpec& spec, double v) {
  if (!(spec.c > 0.0)) throw DomainError("contour: c must be positive");
  if (!(spec.T > 0.0)) throw DomainError("contour: T must be positive");
  if (!(v > 0.0)) throw DomainError("contour: v must be positive");
  const double hmax = std::min(0.05, 1.0 / (4.0 * std::abs(std::log(v)) + 1.0));
  if (!(spec.h > 0.0) || spec.h > hmax)
    throw DomainError("contour: step h = " + std::to_string(spec.h) + " exceeds " + std::to_string(hmax));
}

std::complex<double> mellin_scalar(double w, const ContourSpec& spec) {
  if (!(w > 0.0)) throw DomainError("mellin_scalar: w must be positive");
  validate_contour(spec, w);
  const Nodes nd = line_nodes(spec, -std::log(w));
  CompensatedComplexSum acc;
  for (const auto& x : nd.w) acc += x;
  return acc.value();
}

ContourResult contour_lambda_integral_detailed(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                               const ContourSpec& spec) {
  validate_contour(spec, v);
  const double sigma = u + spec.c;
  if (!(sigma > 1.05)) throw DomainError("contour_lambda_integral: need u + c > 1.05 for absolute convergence");
  const int m = coeffs.degree();

  const Nodes nd = line_nodes(spec, std::log(v));
  double G = 0.0;
  for (const auto& x : nd.w) G += std::abs(x);
  std::size_t k0 = 0, k1 = nd.w.size();
  while (k0 < k1 && std::abs(nd.w[k0]) < kNegligibleWeight * G) ++k0;
  while (k1 > k0 && std::abs(nd.w[k1 - 1]) < kNegligibleWeight * G) --k1;

  const double target = std::min(kSeriesTail, kWeightedTail / G);
  const auto tail = [&](double P) { return m * prime_log_tail_bound(sigma, P) / (1.0 - std::pow(P, -sigma)); };
  double P = std::max(1000.0, cutoff);
  while (tail(P) > target) {
    P *= 2.0;
    if (P > static_cast<double>(kMaxSeriesPrime))
      throw ConfigurationError("contour_lambda_integral: F'/F series needs primes beyond 1e8");
  }
  const auto table = shared_prime_table(static_cast<std::uint64_t>(P));
  const std::size_t i0 = table->count_up_to(cutoff), i1 = table->count_up_to(P);
  const double eps = target / static_cast<double>(i1 - i0 + 1);

  std::vector<std::complex<double>> c(m), pw(m);
  CompensatedComplexSum total;
  for (std::size_t i = i0; i < i1; ++i) {
    const double lp = table->log_p()[i];
    const double r = std::exp(-sigma * lp);
    coeffs.roots((*table)[i], c);
    pw = c;
    double amp = lp * r;
    for (int l = 1; m * amp / (1.0 - r) > eps; ++l) {
      std::complex<double> d{};
      for (int j = 0; j < m; ++j) d += pw[j];
      for (int j = 0; j < m; ++j) pw[j] *= c[j];
      const double omega = l * lp;
      // sum_k w_k exp(-i omega y_k), phase advanced by recurrence
      const std::complex<double> step = std::polar(1.0, -omega * spec.h);
      std::complex<double> inner{};
      std::complex<double> ph;
      for (std::size_t k = k0; k < k1; ++k) {
        if ((k - k0) % kResync == 0) ph = std::polar(1.0, -omega * nd.y[k]);
        inner += nd.w[k] * ph;
        ph *= step;
      }
      total += -d * amp * inner;
      amp *= r;
    }
  }
  return {total.value(), static_cast<std::uint64_t>(P), tail(P)};
}

std::complex<double> contour_lambda_integral(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                             const ContourSpec& spec) {
  return contour_lambda_integral_detailed(coeffs, cutoff, u, v, spec).value;
}

}  // namespace eulertrunc

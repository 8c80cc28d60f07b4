#include "eulertrunc/lfunc_model.hpp"

#include <cmath>
#include <numbers>

#include "eulertrunc/errors.hpp"
#include "eulertrunc/l_oracle.hpp"
#include "eulertrunc/special.hpp"
#include "eulertrunc/summation.hpp"

namespace eulertrunc {

namespace {

constexpr double kUnitSlack = 1e-12;
constexpr std::uint64_t kDirectCutoffMax = 200'000'000;
constexpr double kWeightFloor = 40.0;  // e^{-40} ~ 4.2e-18

// log (1 - z)^{-1}
std::complex<double> local_log(std::complex<double> z) {
  if (std::abs(z) < 0.8) {
    std::complex<double> w = z, acc{};
    const double az = std::abs(z);
    double mag = az;
    for (int l = 1; l < 400; ++l) {
      acc += w / static_cast<double>(l);
      mag *= az;
      if (mag < 1e-18 * l) break;
      w *= z;
    }
    return acc;
  }
  return -std::log(1.0 - z);
}

// smallest l >= 2 such that the l-tail at p, m p^{-l a}/(l (1 - p^{-a})), is below eps
int depth_for(double p, double alpha, int m, double eps) {
  const double r = std::pow(p, -alpha);
  double tail = m * r * r / (1.0 - r);
  int l = 2;
  while (tail / l > eps && l < 2000) {
    tail *= r;
    ++l;
  }
  return l - 1;  // terms 2..l-1 are kept; the rest is below eps
}

// sum over the given primes of sum_{l=2}^{depth} d_p(l) / (l p^{l alpha}); roots flattened per prime
std::complex<double> head_sum(std::span<const std::uint32_t> primes, int m, std::span<const std::complex<double>> roots,
                              double alpha, double eps_per_prime) {
  std::vector<std::complex<double>> w(m), pw(m);
  CompensatedComplexSum acc;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const double dp = static_cast<double>(primes[i]);
    const int L = depth_for(dp, alpha, m, eps_per_prime);
    const double r = std::pow(dp, -alpha);
    for (int j = 0; j < m; ++j) pw[j] = w[j] = roots[i * m + j] * r;
    std::complex<double> local{};
    for (int l = 2; l <= L; ++l) {
      std::complex<double> d{};
      for (int j = 0; j < m; ++j) {
        pw[j] *= w[j];
        d += pw[j];
      }
      local += d / static_cast<double>(l);
    }
    acc += local;
  }
  return acc.value();
}

double power_tail(int m, double s, double P) { return m * prime_power_tail_bound(s, P) / (1.0 - std::pow(P, -s)); }

std::vector<std::complex<double>> flat_roots(const EulerCoefficients& coeffs, std::span<const std::uint32_t> primes) {
  const int m = coeffs.degree();
  std::vector<std::complex<double>> out(primes.size() * m);
  for (std::size_t i = 0; i < primes.size(); ++i) coeffs.roots(primes[i], std::span(out).subspan(i * m, m));
  return out;
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int mobius(std::uint64_t n) {
  if (n == 0) throw DomainError("mobius: n must be >= 1");
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

// ---------------------------------------------------------------------------

EulerCoefficients::EulerCoefficients(int degree) : m_(degree) {
  if (degree < 1) throw DomainError("EulerCoefficients: degree must be >= 1");
}

void EulerCoefficients::roots(std::uint64_t p, std::span<std::complex<double>> out) const {
  fill_roots(p, out);
  for (const auto& c : out)
    if (std::abs(c) > 1.0 + kUnitSlack) throw DomainError("EulerCoefficients: |c_j(p)| > 1 at p = " + std::to_string(p));
}

std::vector<std::complex<double>> EulerCoefficients::roots(std::uint64_t p) const {
  std::vector<std::complex<double>> out(m_);
  roots(p, out);
  return out;
}

std::optional<std::complex<double>> EulerCoefficients::power_l_value(double, int) const { return std::nullopt; }

DirichletCoefficients::DirichletCoefficients(DirichletCharacter chi) : EulerCoefficients(1), chi_(std::move(chi)) {}

void DirichletCoefficients::fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const {
  out[0] = chi_(static_cast<std::int64_t>(p));
}

std::optional<std::complex<double>> DirichletCoefficients::power_l_value(double s, int n) const {
  if (!(s > 1.0)) return std::nullopt;
  return dirichlet_l(chi_.power(n), s);
}

SyntheticCoefficients::SyntheticCoefficients(int degree, std::uint64_t seed)
    : EulerCoefficients(degree), seed_(seed) {}

void SyntheticCoefficients::fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const {
  const std::uint64_t base = splitmix64(seed_);
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::uint64_t key = splitmix64(splitmix64(base ^ (j + 1)) ^ p);
    const double u = static_cast<double>(key >> 11) * 0x1.0p-53;
    const double a = 2.0 * std::numbers::pi * u;
    out[j] = {std::cos(a), std::sin(a)};
  }
}

ConstantCoefficients::ConstantCoefficients(std::vector<std::complex<double>> values)
    : EulerCoefficients(static_cast<int>(values.size())), values_(std::move(values)) {}

void ConstantCoefficients::fill_roots(std::uint64_t, std::span<std::complex<double>> out) const {
  std::copy(values_.begin(), values_.end(), out.begin());
}

std::optional<std::complex<double>> ConstantCoefficients::power_l_value(double s, int n) const {
  if (!(s > 1.0)) return std::nullopt;
  std::complex<double> L = 1.0;
  for (const auto& c : values_) {
    const std::complex<double> cn = std::pow(c, n);
    if (std::abs(cn) < 1e-15) continue;
    if (std::abs(cn - 1.0) < 1e-15) {
      L *= riemann_zeta(s);
    } else if (std::abs(cn + 1.0) < 1e-15) {
      L *= riemann_zeta(2 * s) / riemann_zeta(s);
    } else {
      return std::nullopt;
    }
  }
  return L;
}

// ---------------------------------------------------------------------------

DpCache::DpCache(const EulerCoefficients& coeffs, const PrimeTable& table, double p_max, double tol) {
  table.require_covers(p_max);
  const int m = coeffs.degree();
  std::vector<std::complex<double>> c(m), pw(m);
  offsets_.push_back(0);
  for (std::size_t i = 0; i < table.count_up_to(p_max); ++i) {
    const std::uint32_t p = table[i];
    primes_.push_back(p);
    const double growth = kSigmaMin * table.log_p()[i];
    const int lmax = std::max(1, static_cast<int>(std::floor(std::log(m / tol) / growth)) + 1);
    coeffs.roots(p, c);
    pw = c;
    for (int l = 1; l <= lmax; ++l) {
      std::complex<double> d{};
      for (int j = 0; j < m; ++j) d += pw[j];
      values_.push_back(d);
      for (int j = 0; j < m; ++j) pw[j] *= c[j];
    }
    offsets_.push_back(values_.size());
  }
}

std::complex<double> d_p(const EulerCoefficients& coeffs, std::uint64_t p, int l) {
  if (!is_prime(p)) throw DomainError("d_p: " + std::to_string(p) + " is not prime");
  if (l < 1) throw DomainError("d_p: l must be >= 1");
  std::complex<double> d{};
  for (const auto& c : coeffs.roots(p)) d += std::pow(c, l);
  return d;
}

std::complex<double> truncated_euler_product(const EulerCoefficients& coeffs, double y, double s,
                                             const PrimeTable& table) {
  if (y < 2.0) return 1.0;
  table.require_covers(y);
  std::vector<std::complex<double>> c(coeffs.degree());
  std::complex<double> prod = 1.0;
  const std::size_t n = table.count_up_to(y);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.roots(table[i], c);
    const double ps = std::exp(-s * table.log_p()[i]);
    for (const auto& cj : c) prod /= (1.0 - cj * ps);
  }
  return prod;
}

std::complex<double> log_truncated(const EulerCoefficients& coeffs, double y, double s, const PrimeTable& table) {
  if (!(s > 0.5)) throw DomainError("log_truncated: s must exceed 1/2");
  if (y < 2.0) return 0.0;
  table.require_covers(y);
  std::vector<std::complex<double>> c(coeffs.degree());
  CompensatedComplexSum acc;
  const std::size_t n = table.count_up_to(y);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.roots(table[i], c);
    const double ps = std::exp(-s * table.log_p()[i]);
    for (const auto& cj : c) acc += local_log(cj * ps);
  }
  return acc.value();
}

std::complex<double> prime_sum(const EulerCoefficients& coeffs, double y, double alpha, const PrimeTable& table) {
  if (y < 2.0) return 0.0;
  table.require_covers(y);
  std::vector<std::complex<double>> c(coeffs.degree());
  CompensatedComplexSum acc;
  const std::size_t n = table.count_up_to(y);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.roots(table[i], c);
    std::complex<double> d{};
    for (const auto& cj : c) d += cj;
    acc += d * std::exp(-alpha * table.log_p()[i]);
  }
  return acc.value();
}

MobiusTailPlan plan_mobius_tail(int degree, double alpha, double tol) {
  if (!(alpha > 0.5)) throw DivergenceError("c_alpha: the prime-power series diverges for alpha <= 1/2");
  if (!(tol > 0.0)) throw DomainError("c_alpha: tol must be positive");
  // cutoff small enough for a cheap head, large enough that every
  // log L_{p > P0}(n alpha; c^n) stays well inside the principal strip
  MobiusTailPlan plan;
  for (std::uint64_t cand : {50ull, 200ull, 1000ull, 10'000ull, 100'000ull, 1'000'000ull}) {
    plan.prime_cutoff = cand;
    if (power_tail(degree, 2 * alpha, static_cast<double>(cand)) < 0.5) break;
  }
  const double P0 = static_cast<double>(plan.prime_cutoff);
  if (power_tail(degree, 2 * alpha, P0) >= 0.5)
    throw ConfigurationError("c_alpha: alpha too close to 1/2 for the accelerated tail");
  for (int n = 2;; ++n) {
    const double rest = power_tail(degree, n * alpha, P0) / (n * (1.0 - std::pow(P0, -alpha)));
    if (rest < tol / 4.0) break;
    const int mu = mobius(static_cast<std::uint64_t>(n));
    if (mu == 0) continue;
    plan.n.push_back(n);
    plan.mu.push_back(mu);
  }
  const auto table = shared_prime_table(plan.prime_cutoff);
  plan.head_eps = tol / (4.0 * static_cast<double>(table->count_up_to(P0)));
  return plan;
}

std::complex<double> c_alpha_mobius(std::span<const std::uint32_t> primes, int degree,
                                    std::span<const std::complex<double>> roots, double alpha,
                                    const MobiusTailPlan& plan, std::span<const std::complex<double>> l_values) {
  std::complex<double> value = head_sum(primes, degree, roots, alpha, plan.head_eps);
  for (std::size_t t = 0; t < plan.n.size(); ++t) {
    const int n = plan.n[t];
    const double s = n * alpha;
    CompensatedComplexSum lg;
    lg += std::log(l_values[t]);
    for (std::size_t i = 0; i < primes.size(); ++i) {
      const double ps = std::pow(static_cast<double>(primes[i]), -s);
      for (int j = 0; j < degree; ++j) lg += std::log(1.0 - std::pow(roots[i * degree + j], n) * ps);
    }
    std::complex<double> tail = lg.value();
    tail.imag(tail.imag() - 2.0 * std::numbers::pi * std::round(tail.imag() / (2.0 * std::numbers::pi)));
    value -= static_cast<double>(plan.mu[t]) / n * tail;
  }
  return value;
}

CAlphaResult c_alpha_detailed(const EulerCoefficients& coeffs, double alpha, double tol) {
  if (!(alpha > 0.5)) throw DivergenceError("c_alpha: the prime-power series diverges for alpha <= 1/2");
  if (!(tol > 0.0)) throw DomainError("c_alpha: tol must be positive");
  const int m = coeffs.degree();

  CAlphaResult res;
  if (coeffs.power_l_value(2 * alpha, 2)) {
    const auto plan = plan_mobius_tail(m, alpha, tol);
    const auto table = shared_prime_table(plan.prime_cutoff);
    const auto primes = table->primes().first(table->count_up_to(static_cast<double>(plan.prime_cutoff)));
    std::vector<std::complex<double>> Ls;
    for (int n : plan.n) {
      const auto L = coeffs.power_l_value(n * alpha, n);
      if (!L) throw ConfigurationError("c_alpha: instance has no L-value oracle at s = " + std::to_string(n * alpha));
      Ls.push_back(*L);
    }
    res.value = c_alpha_mobius(primes, m, flat_roots(coeffs, primes), alpha, plan, Ls);
    res.bound = tol / 2.0;
    res.prime_cutoff = plan.prime_cutoff;
    res.mobius_terms = static_cast<int>(plan.n.size());
    return res;
  }

  double P = 1000.0;
  while (power_tail(m, 2 * alpha, P) > tol / 2.0 && P <= kDirectCutoffMax) P *= 2.0;
  if (P > kDirectCutoffMax)
    throw ConfigurationError("c_alpha: direct summation would need primes beyond " + std::to_string(kDirectCutoffMax) +
                             " for tol " + std::to_string(tol));
  const auto table = shared_prime_table(static_cast<std::uint64_t>(P));
  const auto primes = table->primes().first(table->count_up_to(P));
  const double eps = tol / (4.0 * static_cast<double>(primes.size()));
  res.value = head_sum(primes, m, flat_roots(coeffs, primes), alpha, eps);
  res.bound = power_tail(m, 2 * alpha, P) + tol / 4.0;
  res.prime_cutoff = static_cast<std::uint64_t>(P);
  return res;
}

std::complex<double> c_alpha(const EulerCoefficients& coeffs, double alpha, double tol) {
  return c_alpha_detailed(coeffs, alpha, tol).value;
}

std::complex<double> smoothed_prime_sum(const EulerCoefficients& coeffs, double y_low, double y_high, double alpha,
                                        double v, const PrimeTable& table) {
  if (!(v > 1.0)) throw DomainError("smoothed_prime_sum: v must exceed 1");
  if (y_high < y_low) throw DomainError("smoothed_prime_sum: y_low must not exceed y_high");
  if (y_high < 2.0) return 0.0;
  table.require_covers(y_high);
  std::vector<std::complex<double>> c(coeffs.degree());
  CompensatedComplexSum acc;
  for (std::size_t i = table.count_up_to(y_low); i < table.count_up_to(y_high); ++i) {
    const double p = table[i];
    coeffs.roots(table[i], c);
    std::complex<double> d{};
    for (const auto& cj : c) d += cj;
    acc += d * std::exp(-p / v - alpha * table.log_p()[i]);
  }
  return acc.value();
}

std::complex<double> smoothed_lambda_sum(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                         const PrimeTable& table, const LambdaSumLimits& limits) {
  if (!(u > 0.5)) throw DomainError("smoothed_lambda_sum: u must exceed 1/2");
  if (!(v > 0.0)) throw DomainError("smoothed_lambda_sum: v must be positive");
  if (cutoff < 0.0) throw DomainError("smoothed_lambda_sum: cutoff must be nonnegative");
  double top = kWeightFloor * v;
  if (limits.p_max) top = std::min(top, static_cast<double>(*limits.p_max));
  if (top <= cutoff) return 0.0;
  table.require_covers(top);
  const int m = coeffs.degree();
  const int lcap = limits.max_power.value_or(1 << 20);
  std::vector<std::complex<double>> c(m), pw(m);
  CompensatedComplexSum acc;
  for (std::size_t i = table.count_up_to(cutoff); i < table.count_up_to(top); ++i) {
    const double p = table[i];
    const double lp = table.log_p()[i];
    coeffs.roots(table[i], c);
    pw = c;
    double pl = p;
    for (int l = 1; l <= lcap && pl / v <= kWeightFloor; ++l) {
      std::complex<double> d{};
      for (int j = 0; j < m; ++j) d += pw[j];
      acc += -d * lp * std::exp(-l * u * lp - pl / v);
      for (int j = 0; j < m; ++j) pw[j] *= c[j];
      pl *= p;
    }
  }
  return acc.value();
}

std::complex<double> log_F(const EulerCoefficients& coeffs, double alpha, double y, std::complex<double> oracle_logL,
                           const PrimeTable& table) {
  return oracle_logL - log_truncated(coeffs, y, alpha, table);
}

}  // namespace eulertrunc

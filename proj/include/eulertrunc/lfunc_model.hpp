#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eulertrunc/characters.hpp"
#include "eulertrunc/primes.hpp"

namespace eulertrunc {

// Local roots c_1(p), ..., c_m(p) of an Euler product
//   L(s) = prod_p prod_j (1 - c_j(p) p^{-s})^{-1},  |c_j(p)| <= 1.
class EulerCoefficients {
 public:
  explicit EulerCoefficients(int degree);
  virtual ~EulerCoefficients() = default;

  [[nodiscard]] int degree() const noexcept { return m_; }
  [[nodiscard]] virtual std::string tag() const = 0;

  // Throws DomainError if some |c_j(p)| > 1.
  void roots(std::uint64_t p, std::span<std::complex<double>> out) const;
  [[nodiscard]] std::vector<std::complex<double>> roots(std::uint64_t p) const;

  // Full L(s) of the instance with roots c_j(p)^n, real s > 1, when a closed
  // form or oracle is available. Drives the accelerated tail in c_alpha.
  [[nodiscard]] virtual std::optional<std::complex<double>> power_l_value(double s, int n) const;

 protected:
  virtual void fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const = 0;

 private:
  int m_;
};

// m = 1, c_1(p) = chi(p).
class DirichletCoefficients final : public EulerCoefficients {
 public:
  explicit DirichletCoefficients(DirichletCharacter chi);
  [[nodiscard]] std::string tag() const override { return "dirichlet"; }
  [[nodiscard]] const DirichletCharacter& character() const noexcept { return chi_; }
  [[nodiscard]] std::optional<std::complex<double>> power_l_value(double s, int n) const override;

 protected:
  void fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const override;

 private:
  DirichletCharacter chi_;
};

// c_j(p) = exp(2 pi i u), u = (key >> 11) * 2^-53,
// key = splitmix64(splitmix64(splitmix64(seed) ^ j) ^ p), j = 1..m.
class SyntheticCoefficients final : public EulerCoefficients {
 public:
  SyntheticCoefficients(int degree, std::uint64_t seed);
  [[nodiscard]] std::string tag() const override { return "synthetic"; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

 protected:
  void fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const override;

 private:
  std::uint64_t seed_;
};

// Roots independent of p. {1} gives zeta, {0} the constant 1.
class ConstantCoefficients final : public EulerCoefficients {
 public:
  explicit ConstantCoefficients(std::vector<std::complex<double>> values);
  [[nodiscard]] std::string tag() const override { return "constant"; }
  [[nodiscard]] std::optional<std::complex<double>> power_l_value(double s, int n) const override;

 protected:
  void fill_roots(std::uint64_t p, std::span<std::complex<double>> out) const override;

 private:
  std::vector<std::complex<double>> values_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

inline constexpr double kSigmaMin = 0.55;

// d_p(l) for l = 1..l_max(p), with l_max(p) the smallest l such that
// p^{l * sigma_min} > m / tol.
class DpCache {
 public:
  DpCache(const EulerCoefficients& coeffs, const PrimeTable& table, double p_max, double tol);

  [[nodiscard]] std::size_t size() const noexcept { return offsets_.size() - 1; }
  [[nodiscard]] std::uint32_t prime(std::size_t i) const noexcept { return primes_[i]; }
  [[nodiscard]] int l_max(std::size_t i) const noexcept { return static_cast<int>(offsets_[i + 1] - offsets_[i]); }
  // l in 1..l_max(i)
  [[nodiscard]] std::complex<double> dp(std::size_t i, int l) const noexcept { return values_[offsets_[i] + l - 1]; }

 private:
  std::vector<std::uint32_t> primes_;
  std::vector<std::size_t> offsets_;
  std::vector<std::complex<double>> values_;
};

std::complex<double> d_p(const EulerCoefficients& coeffs, std::uint64_t p, int l);

std::complex<double> truncated_euler_product(const EulerCoefficients& coeffs, double y, double s,
                                             const PrimeTable& table);

// sum_{p <= y} sum_j log (1 - c_j(p) p^{-s})^{-1}: series when |c p^{-s}| < 0.8,
// principal log otherwise. s > 1/2.
std::complex<double> log_truncated(const EulerCoefficients& coeffs, double y, double s, const PrimeTable& table);

// sum_{p <= y} d_p(1) p^{-alpha}
std::complex<double> prime_sum(const EulerCoefficients& coeffs, double y, double alpha, const PrimeTable& table);

struct CAlphaResult {
  std::complex<double> value;
  double bound = 0.0;             // rigorous bound on |value - C(alpha)|, excluding rounding
  std::uint64_t prime_cutoff = 0; // primes summed directly
  int mobius_terms = 0;           // 0 for plain double summation
};

// Prime cutoff and Moebius terms for the accelerated tail of C(alpha).
struct MobiusTailPlan {
  std::uint64_t prime_cutoff = 0;
  std::vector<int> n;   // squarefree n >= 2, ascending
  std::vector<int> mu;  // mu(n)
  double head_eps = 0;  // per-prime truncation budget of the l-series
};

MobiusTailPlan plan_mobius_tail(int degree, double alpha, double tol);

// C(alpha) from the roots at the plan's primes (flattened, degree entries per
// prime) and L(n alpha; c^n) for each planned n.
std::complex<double> c_alpha_mobius(std::span<const std::uint32_t> primes, int degree,
                                    std::span<const std::complex<double>> roots, double alpha,
                                    const MobiusTailPlan& plan, std::span<const std::complex<double>> l_values);

// C(alpha) = sum_p sum_{l >= 2} d_p(l) / (l p^{l alpha}). When the instance
// provides power_l_value, primes above a small cutoff are handled through
//   sum_{n >= 2} -mu(n)/n log L_{p > P}(n alpha; c^n);
// otherwise the double sum is cut where m sum_{p > P} p^{-2a}/(1 - p^{-a}) < tol/2.
CAlphaResult c_alpha_detailed(const EulerCoefficients& coeffs, double alpha, double tol);
std::complex<double> c_alpha(const EulerCoefficients& coeffs, double alpha, double tol);

// sum_{y_low < p <= y_high} d_p(1) e^{-p/v} p^{-alpha}
std::complex<double> smoothed_prime_sum(const EulerCoefficients& coeffs, double y_low, double y_high, double alpha,
                                        double v, const PrimeTable& table);

struct LambdaSumLimits {
  std::optional<std::uint64_t> p_max;
  std::optional<int> max_power;
};

// -sum_{p > cutoff} sum_l d_p(l) log p p^{-l u} e^{-p^l / v}. Terms with
// p^l / v > 40 are dropped (weight < 5e-18).
std::complex<double> smoothed_lambda_sum(const EulerCoefficients& coeffs, double cutoff, double u, double v,
                                         const PrimeTable& table, const LambdaSumLimits& limits = {});

// log L(alpha) - log L_{p <= y}(alpha), given the oracle's branch-consistent log L(alpha).
std::complex<double> log_F(const EulerCoefficients& coeffs, double alpha, double y, std::complex<double> oracle_logL,
                           const PrimeTable& table);

int mobius(std::uint64_t n);

}  // namespace eulertrunc

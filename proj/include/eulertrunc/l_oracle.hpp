#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eulertrunc/characters.hpp"

namespace eulertrunc {

enum class LMethod { digamma, hurwitz, series };

const char* to_string(LMethod m) noexcept;

struct LValueRecord {
  std::string character_id;
  double s = 0.0;
  std::complex<double> L;
  std::optional<std::complex<double>> logL;
  LMethod method = LMethod::digamma;
  double error_estimate = 0.0;
};

// Per-modulus tables: psi(a/q) and, per s, q^{-s} zeta(s, a/q). Built once and
// shared read-only; the Hurwitz cache is filled lazily under a lock.
class ModulusTables {
 public:
  explicit ModulusTables(std::uint64_t q);

  [[nodiscard]] std::uint64_t modulus() const noexcept { return q_; }
  [[nodiscard]] const std::vector<double>& digamma() const noexcept { return digamma_; }
  [[nodiscard]] std::shared_ptr<const std::vector<double>> hurwitz(double s) const;

 private:
  std::uint64_t q_;
  std::vector<double> digamma_;
  mutable std::mutex mu_;
  mutable std::map<double, std::shared_ptr<const std::vector<double>>> hurwitz_;
};

// Process-wide cache keyed by modulus.
std::shared_ptr<const ModulusTables> modulus_tables(std::uint64_t q);

// chi(a) for a = 0..q-1.
std::vector<std::complex<double>> character_values(const DirichletCharacter& chi);

// L(s, chi) for any s > 0; principal characters are allowed when s != 1.
// s = 1 uses the digamma formula.
std::complex<double> dirichlet_l(const DirichletCharacter& chi, double s);

LValueRecord l_value_at_1(const DirichletCharacter& chi);
LValueRecord l_value(double s, const DirichletCharacter& chi);

// log L(s) continued from the anchor sigma0 down the real axis to s. `anchor_log`
// is the branch value at sigma0. Steps are halved until the argument of L moves
// by less than pi/2; |L| < 1e-6 on the path throws BranchTrackingError.
std::complex<double> continue_log(double s, double sigma0, std::complex<double> anchor_log,
                                  const std::function<std::complex<double>(double)>& L);

// Log(value) shifted by the multiple of 2 pi i that lands nearest `approx`.
std::complex<double> nearest_branch(std::complex<double> value, std::complex<double> approx);

inline constexpr double kAnchorSigma = 3.0;
inline constexpr double kZeroThreshold = 1e-6;

std::complex<double> log_l_continued(double s, const DirichletCharacter& chi);

// l_value plus the branch-tracked log.
LValueRecord l_value_with_log(double s, const DirichletCharacter& chi);

}  // namespace eulertrunc

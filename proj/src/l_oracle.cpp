#include "eulertrunc/l_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "eulertrunc/errors.hpp"
#include "eulertrunc/primes.hpp"
#include "eulertrunc/special.hpp"
#include "eulertrunc/summation.hpp"

namespace eulertrunc {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kCacheCap = 32;
}  // namespace

const char* to_string(LMethod m) noexcept {
  switch (m) {
    case LMethod::digamma: return "digamma";
    case LMethod::hurwitz: return "hurwitz";
    case LMethod::series: return "series";
  }
  return "?";
}

ModulusTables::ModulusTables(std::uint64_t q) : q_(q), digamma_(digamma_table(q)) {}

std::shared_ptr<const std::vector<double>> ModulusTables::hurwitz(double s) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = hurwitz_.find(s);
  if (it != hurwitz_.end()) return it->second;
  auto t = std::make_shared<std::vector<double>>(q_ + 1, 0.0);
  for (std::uint64_t a = 1; a <= q_; ++a) (*t)[a] = hurwitz_residue_sum(s, a, q_);
  hurwitz_.emplace(s, t);
  return t;
}

std::shared_ptr<const ModulusTables> modulus_tables(std::uint64_t q) {
  static std::mutex mu;
  static std::unordered_map<std::uint64_t, std::shared_ptr<const ModulusTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  if (cache.size() >= kCacheCap) cache.clear();
  auto t = std::make_shared<const ModulusTables>(q);
  cache.emplace(q, t);
  return t;
}

std::vector<std::complex<double>> character_values(const DirichletCharacter& chi) {
  const std::uint64_t q = chi.modulus();
  std::vector<std::complex<double>> v(q);
  for (std::uint64_t a = 0; a < q; ++a) v[a] = chi(static_cast<std::int64_t>(a));
  return v;
}

namespace {

struct Evaluated {
  std::complex<double> value;
  double error;
};

Evaluated l_at_1(const DirichletCharacter& chi) {
  const std::uint64_t q = chi.modulus();
  const auto& psi = modulus_tables(q)->digamma();
  CompensatedComplexSum acc;
  double mass = 0.0;
  for (std::uint64_t a = 1; a < q; ++a) {
    const auto k = chi.angle(static_cast<std::int64_t>(a));
    if (!k) continue;
    acc += chi.group()->root(*k) * psi[a];
    mass += std::abs(psi[a]);
  }
  const double dq = static_cast<double>(q);
  return {-acc.value() / dq, 8.0 * kEps * mass / dq + 1e-15};
}

Evaluated l_hurwitz(const DirichletCharacter& chi, double s) {
  const std::uint64_t q = chi.modulus();
  const auto H = modulus_tables(q)->hurwitz(s);
  CompensatedComplexSum acc;
  double mass = 0.0;
  for (std::uint64_t a = 1; a <= q; ++a) {
    const auto k = chi.angle(static_cast<std::int64_t>(a));
    if (!k) continue;
    acc += chi.group()->root(*k) * (*H)[a];
    mass += std::abs((*H)[a]);
  }
  return {acc.value(), 8.0 * kEps * mass + 1e-15};
}

Evaluated l_any(const DirichletCharacter& chi, double s) {
  if (s == 1.0) {
    if (chi.is_principal()) throw PoleError("L(s, chi): principal character has a pole at s = 1");
    return l_at_1(chi);
  }
  return l_hurwitz(chi, s);
}

void require_nonprincipal(const DirichletCharacter& chi) {
  if (chi.is_principal()) throw PoleError("L(s, chi): principal character is not a valid input");
}

// sum_{p <= 100} -log(1 - chi(p) p^{-sigma}), used only to pick the branch at the anchor.
std::complex<double> anchor_series(const DirichletCharacter& chi, double sigma) {
  static const PrimeTable small = sieve_primes(100);
  std::complex<double> acc{};
  for (auto p : small.primes()) {
    const auto z = chi(p) * std::pow(static_cast<double>(p), -sigma);
    acc -= std::log(1.0 - z);
  }
  return acc;
}

}  // namespace

std::complex<double> dirichlet_l(const DirichletCharacter& chi, double s) {
  if (!(s > 0.0)) throw DomainError("L(s, chi): s must be positive");
  return l_any(chi, s).value;
}

LValueRecord l_value_at_1(const DirichletCharacter& chi) {
  require_nonprincipal(chi);
  const auto e = l_at_1(chi);
  return {chi.id(), 1.0, e.value, std::nullopt, LMethod::digamma, e.error};
}

LValueRecord l_value(double s, const DirichletCharacter& chi) {
  require_nonprincipal(chi);
  if (!(s > 0.5 && s <= 4.0)) throw DomainError("l_value: s must lie in (0.5, 4]");
  if (s == 1.0) return l_value_at_1(chi);
  const auto e = l_hurwitz(chi, s);
  return {chi.id(), s, e.value, std::nullopt, LMethod::hurwitz, e.error};
}

std::complex<double> nearest_branch(std::complex<double> value, std::complex<double> approx) {
  std::complex<double> lg = std::log(value);
  const double k = std::round((approx.imag() - lg.imag()) / (2.0 * std::numbers::pi));
  return {lg.real(), lg.imag() + 2.0 * std::numbers::pi * k};
}

std::complex<double> continue_log(double s, double sigma0, std::complex<double> anchor_log,
                                  const std::function<std::complex<double>(double)>& L) {
  constexpr double grid = 0.5;
  constexpr double min_step = 1e-6;
  double cur = sigma0;
  std::complex<double> Lcur = L(cur);
  std::complex<double> lam = anchor_log;
  double step = grid;
  while (cur > s) {
    // stop at the next grid point below cur so cached grid values are reused
    const double next_grid = sigma0 - grid * std::ceil((sigma0 - cur) / grid + 1e-9);
    double target = std::max(cur - step, next_grid);
    target = std::max(target, s);
    const std::complex<double> Lt = L(target);
    if (std::abs(Lt) < kZeroThreshold)
      throw BranchTrackingError("log L: |L| < 1e-6 at sigma = " + std::to_string(target));
    const std::complex<double> r = Lt / Lcur;
    if (std::abs(std::arg(r)) < std::numbers::pi / 2) {
      lam += std::log(r);
      cur = target;
      Lcur = Lt;
      step = std::min(2 * step, grid);
    } else {
      step /= 2;
      if (step < min_step) throw BranchTrackingError("log L: argument of L is not resolvable along the path");
    }
  }
  return lam;
}

std::complex<double> log_l_continued(double s, const DirichletCharacter& chi) {
  require_nonprincipal(chi);
  if (!(s > 0.8 && s <= 4.0)) throw DomainError("log_l_continued: s must lie in (0.8, 4]");
  const double sigma0 = std::max(kAnchorSigma, s);
  const auto L0 = l_any(chi, sigma0).value;
  const auto anchor = nearest_branch(L0, anchor_series(chi, sigma0));
  return continue_log(s, sigma0, anchor, [&](double sigma) { return l_any(chi, sigma).value; });
}

LValueRecord l_value_with_log(double s, const DirichletCharacter& chi) {
  auto rec = l_value(s, chi);
  rec.logL = log_l_continued(s, chi);
  return rec;
}

}  // namespace eulertrunc

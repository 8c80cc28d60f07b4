#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace eulertrunc {

// Immutable list of all primes up to `limit`, with their natural logs.
// Safe for concurrent reads once constructed.
class PrimeTable {
 public:
  PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes);

  [[nodiscard]] std::uint64_t limit() const noexcept { return limit_; }
  [[nodiscard]] std::span<const std::uint32_t> primes() const noexcept { return primes_; }
  [[nodiscard]] std::span<const double> log_p() const noexcept { return log_p_; }
  [[nodiscard]] std::size_t size() const noexcept { return primes_.size(); }
  [[nodiscard]] std::uint32_t operator[](std::size_t i) const noexcept { return primes_[i]; }

  // Number of primes p <= x (x may exceed the limit; the caller checks coverage).
  [[nodiscard]] std::size_t count_up_to(double x) const noexcept;

  // Throws InsufficientTableError when x > limit().
  void require_covers(double x) const;

  [[nodiscard]] bool contains(std::uint64_t n) const noexcept;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<double> log_p_;
};

// Plain odd-only sieve up to 10^7, segmented above. limit < 2 is a domain error.
PrimeTable sieve_primes(std::uint64_t limit);

// Process-wide table covering at least `limit`; regrown (doubling) on demand.
std::shared_ptr<const PrimeTable> shared_prime_table(std::uint64_t limit);

namespace detail {
// Exposed for tests: force the segmented path with a given segment length.
std::vector<std::uint32_t> segmented_sieve(std::uint64_t limit, std::uint64_t segment);
std::vector<std::uint32_t> simple_sieve(std::uint64_t limit);
}  // namespace detail

// Sum over p <= x of 1/p.
double mertens_sum(double x, const PrimeTable& table);

// Sum over p <= x of log p.
double chebyshev_sum(double x, const PrimeTable& table);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

// Rigorous upper bound for sum_{p > x} p^{-s}, s > 1, from pi(t) < 1.25506 t / log t.
double prime_power_tail_bound(double s, double x);

// Rigorous upper bound for sum_{p > x} log(p) p^{-s}, s > 1, from theta(t) < 1.01624 t.
double prime_log_tail_bound(double s, double x);

}  // namespace eulertrunc

#include "eulertrunc/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "eulertrunc/errors.hpp"
#include "eulertrunc/summation.hpp"

namespace eulertrunc {

namespace {

constexpr std::uint64_t kPlainSieveMax = 10'000'000;
constexpr std::uint64_t kSegment = 1u << 19;

}  // namespace

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint32_t> primes)
    : limit_(limit), primes_(std::move(primes)) {
  log_p_.reserve(primes_.size());
  for (auto p : primes_) log_p_.push_back(std::log(static_cast<double>(p)));
}

std::size_t PrimeTable::count_up_to(double x) const noexcept {
  if (x < 2.0) return 0;
  if (x >= static_cast<double>(std::numeric_limits<std::uint32_t>::max())) return primes_.size();
  const auto bound = static_cast<std::uint32_t>(std::floor(x));
  return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), bound) -
                                  primes_.begin());
}

void PrimeTable::require_covers(double x) const {
  if (x > static_cast<double>(limit_)) {
    throw InsufficientTableError("prime table limit " + std::to_string(limit_) +
                                 " does not cover x = " + std::to_string(x));
  }
}

bool PrimeTable::contains(std::uint64_t n) const noexcept {
  if (n > std::numeric_limits<std::uint32_t>::max()) return false;
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

namespace detail {

std::vector<std::uint32_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  out.push_back(2);
  // bit i represents the odd number 2i+1
  const std::uint64_t n_odd = (limit - 1) / 2 + 1;
  std::vector<bool> composite(n_odd, false);
  for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    for (std::uint64_t j = (p * p) / 2; j < n_odd; j += p) composite[j] = true;
  }
  for (std::uint64_t i = 1; i < n_odd; ++i) {
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(2 * i + 1));
  }
  return out;
}

std::vector<std::uint32_t> segmented_sieve(std::uint64_t limit, std::uint64_t segment) {
  if (limit < 2) return {};
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;
  std::vector<std::uint32_t> base = simple_sieve(root);
  std::vector<std::uint32_t> out;
  out.reserve(static_cast<std::size_t>(1.1 * static_cast<double>(limit) /
                                       std::max(1.0, std::log(static_cast<double>(limit)))));
  std::vector<std::uint8_t> mark(segment);
  for (std::uint64_t lo = 2; lo <= limit; lo += segment) {
    const std::uint64_t hi = std::min(limit, lo + segment - 1);
    const std::uint64_t len = hi - lo + 1;
    std::fill(mark.begin(), mark.begin() + static_cast<std::ptrdiff_t>(len), 0);
    for (auto p32 : base) {
      const std::uint64_t p = p32;
      if (p * p > hi) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m <= hi; m += p) mark[m - lo] = 1;
    }
    for (std::uint64_t k = 0; k < len; ++k) {
      if (!mark[k]) out.push_back(static_cast<std::uint32_t>(lo + k));
    }
  }
  return out;
}

}  // namespace detail

PrimeTable sieve_primes(std::uint64_t limit) {
  if (limit < 2) throw DomainError("sieve_primes: limit must be at least 2");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigurationError("sieve_primes: limit exceeds 32-bit prime storage");
  }
  auto primes = limit <= kPlainSieveMax ? detail::simple_sieve(limit)
                                        : detail::segmented_sieve(limit, kSegment);
  return PrimeTable(limit, std::move(primes));
}

std::shared_ptr<const PrimeTable> shared_prime_table(std::uint64_t limit) {
  static std::mutex mu;
  static std::shared_ptr<const PrimeTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->limit() < limit) {
    const std::uint64_t grown = table ? std::max(limit, 2 * table->limit()) : std::max<std::uint64_t>(limit, 1 << 16);
    table = std::make_shared<const PrimeTable>(sieve_primes(grown));
  }
  return table;
}

double mertens_sum(double x, const PrimeTable& table) {
  table.require_covers(x);
  const std::size_t n = table.count_up_to(x);
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(1.0 / static_cast<double>(table[i]));
  return acc.value();
}

double chebyshev_sum(double x, const PrimeTable& table) {
  table.require_covers(x);
  const std::size_t n = table.count_up_to(x);
  const auto logs = table.log_p();
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(logs[i]);
  return acc.value();
}

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // bases sufficient for all n < 2^64
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

double prime_power_tail_bound(double s, double x) {
  if (s <= 1.0) return std::numeric_limits<double>::infinity();
  x = std::max(x, 2.0);
  return 1.25506 * s / ((s - 1.0) * std::log(x)) * std::pow(x, 1.0 - s);
}

double prime_log_tail_bound(double s, double x) {
  if (s <= 1.0) return std::numeric_limits<double>::infinity();
  x = std::max(x, 2.0);
  return 1.01624 * s / (s - 1.0) * std::pow(x, 1.0 - s);
}

}  // namespace eulertrunc

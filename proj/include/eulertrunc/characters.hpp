#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace eulertrunc {

struct PrimePowerFactor {
  std::uint64_t prime;
  int exponent;
  std::uint64_t modulus;  // prime^exponent
};

enum class ComponentKind {
  cyclic,     // (Z/p^k)^* for odd p, generated by a primitive root
  minus_one,  // the <-1> factor of (Z/2^k)^*, k >= 2
  five,       // the <5> factor of (Z/2^k)^*, k >= 3
};

// One cyclic factor of (Z/qZ)^*.
struct GroupComponent {
  std::size_t factor;  // index into CharacterGroup::factorization()
  ComponentKind kind;
  std::uint64_t generator;  // residue modulo the prime power
  std::uint64_t order;
};

enum class Parity { even, odd };

// Structure of (Z/qZ)^* as a product of cyclic components, with discrete-log
// data per component and a root-of-unity table for the group exponent D.
// Immutable after construction.
class CharacterGroup {
 public:
  explicit CharacterGroup(std::uint64_t q);

  [[nodiscard]] std::uint64_t modulus() const noexcept { return q_; }
  [[nodiscard]] std::span<const PrimePowerFactor> factorization() const noexcept { return factors_; }
  [[nodiscard]] std::span<const GroupComponent> components() const noexcept { return components_; }
  [[nodiscard]] std::size_t rank() const noexcept { return components_.size(); }
  [[nodiscard]] std::uint64_t phi() const noexcept { return phi_; }
  // lcm of the component orders; every character value is a D-th root of unity
  [[nodiscard]] std::uint64_t exponent() const noexcept { return exponent_; }

  // Row-major strides of the exponent vector; the last component varies fastest.
  [[nodiscard]] std::span<const std::uint64_t> strides() const noexcept { return strides_; }

  // Fills one discrete log per component. Returns false when gcd(n, q) > 1.
  bool discrete_logs(std::int64_t n, std::span<std::uint64_t> out) const;

  // e^{2 pi i k / D}
  [[nodiscard]] std::complex<double> root(std::uint64_t k) const;

 private:
  struct LocalLog {
    // full lookup (residue -> log + 1, 0 marks a non-member), or BSGS data
    std::vector<std::uint32_t> table;
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    std::uint64_t giant = 0;  // generator^{-m}
    std::uint64_t m = 0;
    std::uint64_t modulus = 0;
    std::uint64_t generator = 0;
    std::uint64_t order = 0;

    [[nodiscard]] std::uint64_t log(std::uint64_t x) const;
  };

  std::uint64_t q_;
  std::uint64_t phi_ = 1;
  std::uint64_t exponent_ = 1;
  std::vector<PrimePowerFactor> factors_;
  std::vector<GroupComponent> components_;
  std::vector<LocalLog> logs_;  // aligned with components_ (unused for minus_one)
  std::vector<std::uint64_t> strides_;
  std::vector<std::complex<double>> roots_;

  static LocalLog make_log(std::uint64_t modulus, std::uint64_t generator, std::uint64_t order);
};

std::shared_ptr<const CharacterGroup> build_group(std::uint64_t q);

// chi(g_i) = e^{2 pi i e_i / order_i} on the component generators.
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<std::uint64_t> exponents);

  static DirichletCharacter from_index(std::shared_ptr<const CharacterGroup> group, std::uint64_t index);
  static DirichletCharacter principal(std::shared_ptr<const CharacterGroup> group);

  [[nodiscard]] const std::shared_ptr<const CharacterGroup>& group() const noexcept { return group_; }
  [[nodiscard]] std::uint64_t modulus() const noexcept { return group_->modulus(); }
  [[nodiscard]] std::span<const std::uint64_t> exponents() const noexcept { return exponents_; }
  [[nodiscard]] std::uint64_t index() const noexcept { return index_; }
  [[nodiscard]] std::uint64_t order() const noexcept { return order_; }
  [[nodiscard]] std::uint64_t conductor() const noexcept { return conductor_; }
  [[nodiscard]] Parity parity() const noexcept { return parity_; }
  [[nodiscard]] bool is_principal() const noexcept { return order_ == 1; }
  [[nodiscard]] bool is_primitive() const noexcept { return conductor_ == modulus(); }
  [[nodiscard]] bool is_real() const noexcept { return order_ <= 2; }
  [[nodiscard]] std::string id() const;

  // chi(n) = root(angle(n)); nullopt when gcd(n, q) > 1.
  [[nodiscard]] std::optional<std::uint64_t> angle(std::int64_t n) const;
  [[nodiscard]] std::complex<double> operator()(std::int64_t n) const;

  [[nodiscard]] DirichletCharacter conjugate() const;
  [[nodiscard]] DirichletCharacter power(std::int64_t n) const;

  // Angle of chi at a residue given its component discrete logs.
  [[nodiscard]] std::uint64_t angle_from_logs(std::span<const std::uint64_t> logs) const noexcept;

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::vector<std::uint64_t> exponents_;
  std::vector<std::uint64_t> weights_;  // e_i * D / order_i
  std::uint64_t index_ = 0;
  std::uint64_t order_ = 1;
  std::uint64_t conductor_ = 1;
  Parity parity_ = Parity::even;
};

std::complex<double> evaluate(const DirichletCharacter& chi, std::int64_t n);

// Smallest f | q such that chi(n) = 1 for every unit n = 1 mod f.
std::uint64_t conductor(const DirichletCharacter& chi);

// Primitive characters modulo group->modulus(), in ascending index order.
std::vector<DirichletCharacter> primitive_characters(const std::shared_ptr<const CharacterGroup>& group);

// Number of primitive characters mod q.
std::uint64_t primitive_count(std::uint64_t q);

// Every primitive character of conductor q <= Q, in nondecreasing conductor order.
class PrimitiveCharacterStream {
 public:
  explicit PrimitiveCharacterStream(std::uint64_t max_conductor);
  std::optional<DirichletCharacter> next();

 private:
  std::uint64_t max_q_;
  std::uint64_t q_ = 0;
  std::vector<DirichletCharacter> batch_;
  std::size_t pos_ = 0;
};

PrimitiveCharacterStream enumerate_primitive(std::uint64_t max_conductor);

// Small helpers shared with the batch code.
std::vector<PrimePowerFactor> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

}  // namespace eulertrunc

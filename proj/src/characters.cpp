#include "eulertrunc/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eulertrunc/errors.hpp"

namespace eulertrunc {

namespace {

constexpr std::uint64_t kFullLogLimit = 1'000'000;
constexpr std::uint64_t kRootTableLimit = std::uint64_t{1} << 22;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int valuation(std::uint64_t n, std::uint64_t p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

std::uint64_t primitive_root_mod_p(std::uint64_t p) {
  if (p == 2) return 1;
  std::vector<std::uint64_t> rs;
  for (const auto& f : factorize(p - 1)) rs.push_back(f.prime);
  for (std::uint64_t g = 2;; ++g) {
    bool ok = true;
    for (auto r : rs) {
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

std::uint64_t reduce(std::int64_t n, std::uint64_t q) {
  const auto sq = static_cast<std::int64_t>(q);
  std::int64_t r = n % sq;
  if (r < 0) r += sq;
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::vector<PrimePowerFactor> factorize(std::uint64_t n) {
  std::vector<PrimePowerFactor> out;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int k = 0;
    std::uint64_t pk = 1;
    while (n % p == 0) {
      n /= p;
      pk *= p;
      ++k;
    }
    out.push_back({p, k, pk});
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& f : factorize(n)) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> ds{1};
  for (const auto& f : factorize(n)) {
    const std::size_t sz = ds.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= f.exponent; ++k) {
      pk *= f.prime;
      for (std::size_t i = 0; i < sz; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

// ---------------------------------------------------------------------------

CharacterGroup::LocalLog CharacterGroup::make_log(std::uint64_t modulus, std::uint64_t generator,
                                                  std::uint64_t order) {
  LocalLog L;
  L.modulus = modulus;
  L.generator = generator;
  L.order = order;
  if (modulus <= kFullLogLimit) {
    L.table.assign(modulus, 0);
    std::uint64_t x = 1;
    for (std::uint64_t t = 0; t < order; ++t) {
      L.table[x] = static_cast<std::uint32_t>(t + 1);
      x = mulmod(x, generator, modulus);
    }
    return L;
  }
  L.m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
  L.baby.reserve(L.m * 2);
  std::uint64_t x = 1;
  for (std::uint64_t j = 0; j < L.m; ++j) {
    L.baby.emplace(x, j);
    x = mulmod(x, generator, modulus);
  }
  // x = g^m; giant step multiplies by its inverse g^{order - m}
  L.giant = powmod(generator, order - (L.m % order), modulus);
  return L;
}

std::uint64_t CharacterGroup::LocalLog::log(std::uint64_t x) const {
  if (!table.empty()) {
    const std::uint32_t t = table[x];
    if (t == 0) throw Error("discrete log: residue outside the generated subgroup");
    return t - 1;
  }
  std::uint64_t y = x;
  for (std::uint64_t i = 0; i <= m; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) return (i * m + it->second) % order;
    y = mulmod(y, giant, modulus);
  }
  throw Error("discrete log: residue outside the generated subgroup");
}

CharacterGroup::CharacterGroup(std::uint64_t q) : q_(q) {
  if (q == 0) throw DomainError("build_group: modulus must be >= 1");
  factors_ = factorize(q);
  for (std::size_t fi = 0; fi < factors_.size(); ++fi) {
    const auto& f = factors_[fi];
    if (f.prime == 2) {
      if (f.exponent == 1) continue;
      components_.push_back({fi, ComponentKind::minus_one, f.modulus - 1, 2});
      logs_.emplace_back();
      if (f.exponent >= 3) {
        const std::uint64_t ord = f.modulus / 4;
        components_.push_back({fi, ComponentKind::five, 5, ord});
        logs_.push_back(make_log(f.modulus, 5, ord));
      }
      continue;
    }
    std::uint64_t g = primitive_root_mod_p(f.prime);
    if (f.exponent >= 2 && powmod(g, f.prime - 1, f.prime * f.prime) == 1) g += f.prime;
    const std::uint64_t ord = f.modulus / f.prime * (f.prime - 1);
    components_.push_back({fi, ComponentKind::cyclic, g % f.modulus, ord});
    logs_.push_back(make_log(f.modulus, g % f.modulus, ord));
  }

  for (const auto& c : components_) {
    phi_ *= c.order;
    exponent_ = std::lcm(exponent_, c.order);
  }
  strides_.assign(components_.size(), 1);
  for (std::size_t i = components_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * components_[i].order;

  if (exponent_ <= kRootTableLimit) {
    const std::uint64_t D = exponent_;
    roots_.resize(D);
    const double step = 2.0 * std::numbers::pi / static_cast<double>(D);
    for (std::uint64_t k = 0; 2 * k <= D; ++k) {
      std::complex<double> z;
      if ((4 * k) % D == 0) {
        switch ((4 * k) / D) {
          case 0: z = {1.0, 0.0}; break;
          case 1: z = {0.0, 1.0}; break;
          default: z = {-1.0, 0.0}; break;
        }
      } else {
        const double a = step * static_cast<double>(k);
        z = {std::cos(a), std::sin(a)};
      }
      roots_[k] = z;
      if (k != 0 && k != D - k) roots_[D - k] = std::conj(z);
    }
  }
}

bool CharacterGroup::discrete_logs(std::int64_t n, std::span<std::uint64_t> out) const {
  const std::uint64_t r = reduce(n, q_);
  if (std::gcd(r, q_) != 1) return false;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& c = components_[i];
    const std::uint64_t M = factors_[c.factor].modulus;
    const std::uint64_t x = r % M;
    switch (c.kind) {
      case ComponentKind::cyclic:
        out[i] = logs_[i].log(x);
        break;
      case ComponentKind::minus_one:
        out[i] = (x % 4 == 3) ? 1 : 0;
        break;
      case ComponentKind::five:
        out[i] = logs_[i].log(x % 4 == 3 ? M - x : x);
        break;
    }
  }
  return true;
}

std::complex<double> CharacterGroup::root(std::uint64_t k) const {
  k %= exponent_;
  if (!roots_.empty()) return roots_[k];
  const std::uint64_t D = exponent_;
  if ((4 * static_cast<unsigned __int128>(k)) % D == 0) {
    switch (static_cast<int>(4 * static_cast<unsigned __int128>(k) / D)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const bool mirror = 2 * k > D;
  const std::uint64_t kk = mirror ? D - k : k;
  const long double a = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(kk) /
                        static_cast<long double>(D);
  std::complex<double> z{static_cast<double>(std::cos(a)), static_cast<double>(std::sin(a))};
  return mirror ? std::conj(z) : z;
}

std::shared_ptr<const CharacterGroup> build_group(std::uint64_t q) {
  return std::make_shared<const CharacterGroup>(q);
}

// ---------------------------------------------------------------------------

namespace {

// Conductor from the exponent vector, one prime-power factor at a time.
std::uint64_t structural_conductor(const CharacterGroup& G, std::span<const std::uint64_t> e) {
  std::uint64_t f = 1;
  const auto comps = G.components();
  const auto facs = G.factorization();
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    const auto& pf = facs[c.factor];
    switch (c.kind) {
      case ComponentKind::cyclic:
        if (e[i] != 0) f *= ipow(pf.prime, pf.exponent - std::min(valuation(e[i], pf.prime), pf.exponent - 1));
        break;
      case ComponentKind::minus_one: {
        const bool has_five = i + 1 < comps.size() && comps[i + 1].kind == ComponentKind::five;
        const std::uint64_t b = has_five ? e[i + 1] : 0;
        if (b != 0) {
          f *= ipow(2, pf.exponent - valuation(b, 2));
        } else if (e[i] != 0) {
          f *= 4;
        }
        break;
      }
      case ComponentKind::five:
        break;  // folded into the minus_one case
    }
  }
  return f;
}

}  // namespace

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group,
                                       std::vector<std::uint64_t> exponents)
    : group_(std::move(group)), exponents_(std::move(exponents)) {
  if (!group_) throw DomainError("DirichletCharacter: null group");
  const auto comps = group_->components();
  if (exponents_.size() != comps.size()) throw DomainError("DirichletCharacter: exponent vector has wrong length");
  const std::uint64_t D = group_->exponent();
  weights_.resize(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::uint64_t o = comps[i].order;
    if (exponents_[i] >= o) throw DomainError("DirichletCharacter: exponent out of range");
    weights_[i] = exponents_[i] * (D / o);
    index_ += exponents_[i] * group_->strides()[i];
    order_ = std::lcm(order_, o / std::gcd(exponents_[i], o));
  }
  conductor_ = structural_conductor(*group_, exponents_);
  const auto k = angle(-1);
  parity_ = (k && *k != 0) ? Parity::odd : Parity::even;
}

DirichletCharacter DirichletCharacter::from_index(std::shared_ptr<const CharacterGroup> group,
                                                  std::uint64_t index) {
  if (index >= group->phi()) throw DomainError("DirichletCharacter: index out of range");
  std::vector<std::uint64_t> e(group->rank());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = index / group->strides()[i];
    index %= group->strides()[i];
  }
  return DirichletCharacter(std::move(group), std::move(e));
}

DirichletCharacter DirichletCharacter::principal(std::shared_ptr<const CharacterGroup> group) {
  std::vector<std::uint64_t> e(group->rank(), 0);
  return DirichletCharacter(std::move(group), std::move(e));
}

std::string DirichletCharacter::id() const {
  return std::to_string(modulus()) + ":" + std::to_string(index_);
}

std::uint64_t DirichletCharacter::angle_from_logs(std::span<const std::uint64_t> logs) const noexcept {
  const std::uint64_t D = group_->exponent();
  unsigned __int128 k = 0;
  for (std::size_t i = 0; i < weights_.size(); ++i) k += static_cast<unsigned __int128>(weights_[i]) * logs[i];
  return static_cast<std::uint64_t>(k % D);
}

std::optional<std::uint64_t> DirichletCharacter::angle(std::int64_t n) const {
  std::uint64_t buf[64];
  std::span<std::uint64_t> logs(buf, group_->rank());
  if (!group_->discrete_logs(n, logs)) return std::nullopt;
  return angle_from_logs(logs);
}

std::complex<double> DirichletCharacter::operator()(std::int64_t n) const {
  const auto k = angle(n);
  if (!k) return {0.0, 0.0};
  return group_->root(*k);
}

DirichletCharacter DirichletCharacter::conjugate() const { return power(-1); }

DirichletCharacter DirichletCharacter::power(std::int64_t n) const {
  const auto comps = group_->components();
  std::vector<std::uint64_t> e(exponents_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::uint64_t o = comps[i].order;
    const std::uint64_t nn = reduce(n, o);
    e[i] = mulmod(exponents_[i], nn, o);
  }
  return DirichletCharacter(group_, std::move(e));
}

std::complex<double> evaluate(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }

std::uint64_t conductor(const DirichletCharacter& chi) {
  const std::uint64_t q = chi.modulus();
  for (auto f : divisors(q)) {
    bool trivial = true;
    for (std::uint64_t n = 1; n <= q && trivial; n += f) {
      if (std::gcd(n, q) != 1) continue;
      if (*chi.angle(static_cast<std::int64_t>(n)) != 0) trivial = false;
    }
    if (trivial) return f;
  }
  return q;
}

std::vector<DirichletCharacter> primitive_characters(const std::shared_ptr<const CharacterGroup>& group) {
  const auto comps = group->components();
  for (const auto& f : group->factorization())
    if (f.prime == 2 && f.exponent == 1) return {};

  // allowed exponents per component, ascending
  std::vector<std::vector<std::uint64_t>> allowed(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& c = comps[i];
    const auto& pf = group->factorization()[c.factor];
    for (std::uint64_t e = 0; e < c.order; ++e) {
      bool ok = false;
      switch (c.kind) {
        case ComponentKind::cyclic:
          ok = pf.exponent == 1 ? e != 0 : e % pf.prime != 0;
          break;
        case ComponentKind::minus_one:
          ok = pf.exponent == 2 ? e == 1 : true;
          break;
        case ComponentKind::five:
          ok = e % 2 == 1;
          break;
      }
      if (ok) allowed[i].push_back(e);
    }
  }

  std::vector<DirichletCharacter> out;
  out.reserve(primitive_count(group->modulus()));
  std::vector<std::size_t> pos(comps.size(), 0);
  std::vector<std::uint64_t> e(comps.size());
  for (;;) {
    for (std::size_t i = 0; i < comps.size(); ++i) e[i] = allowed[i][pos[i]];
    out.emplace_back(group, e);
    std::size_t i = comps.size();
    while (i > 0) {
      --i;
      if (++pos[i] < allowed[i].size()) break;
      pos[i] = 0;
      if (i == 0) return out;
    }
    if (comps.empty()) return out;
  }
}

std::uint64_t primitive_count(std::uint64_t q) {
  if (q == 0) throw DomainError("primitive_count: modulus must be >= 1");
  std::uint64_t n = 1;
  for (const auto& f : factorize(q)) {
    if (f.prime == 2) {
      if (f.exponent == 1) return 0;
      n *= f.exponent == 2 ? 1 : f.modulus / 4;
    } else if (f.exponent == 1) {
      n *= f.prime - 2;
    } else {
      n *= f.modulus / (f.prime * f.prime) * (f.prime - 1) * (f.prime - 1);
    }
  }
  return n;
}

PrimitiveCharacterStream::PrimitiveCharacterStream(std::uint64_t max_conductor) : max_q_(max_conductor) {
  if (max_conductor < 1) throw DomainError("enumerate_primitive: Q must be >= 1");
}

std::optional<DirichletCharacter> PrimitiveCharacterStream::next() {
  while (pos_ >= batch_.size()) {
    if (q_ >= max_q_) return std::nullopt;
    ++q_;
    batch_ = primitive_characters(build_group(q_));
    pos_ = 0;
  }
  return batch_[pos_++];
}

PrimitiveCharacterStream enumerate_primitive(std::uint64_t max_conductor) {
  return PrimitiveCharacterStream(max_conductor);
}

}  // namespace eulertrunc

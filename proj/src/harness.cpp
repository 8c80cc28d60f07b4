#include "eulertrunc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <random>
#include <thread>

#include "eulertrunc/errors.hpp"
#include "eulertrunc/group_fourier.hpp"
#include "eulertrunc/l_oracle.hpp"
#include "eulertrunc/lfunc_model.hpp"
#include "eulertrunc/special.hpp"
#include "eulertrunc/summation.hpp"

namespace eulertrunc {

namespace {

constexpr double kWindowSlack = 1e-12;
constexpr double kBucketFloor = 1e-20;
constexpr std::size_t kChunk = 32;

using cvec = std::vector<std::complex<double>>;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::uint64_t powmod(std::uint64_t b, int e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

}  // namespace

const char* to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::T1: return "T1";
    case Theorem::T2: return "T2";
    case Theorem::T3: return "T3";
    case Theorem::T4: return "T4";
    case Theorem::T5: return "T5";
  }
  return "?";
}

Theorem theorem_from_int(int n) {
  if (n < 1 || n > 5) throw DomainError("theorem must be one of 1..5");
  return static_cast<Theorem>(n);
}

SweepPlan plan_sweep(Theorem theorem, const TheoremParams& p) {
  if (!(p.Q >= 16)) throw ParameterWindowError("Q must be >= 16 (got " + fmt(p.Q) + ")");
  if (!(p.delta > 0 && p.delta <= 3.5)) throw ParameterWindowError("delta must lie in (0, 7/2] (got " + fmt(p.delta) + ")");
  SweepPlan plan;
  plan.theorem = theorem;
  plan.Q = p.Q;
  plan.delta = p.delta;
  const double L = std::log(p.Q);
  const double y14 = std::pow(L, 14.0 / p.delta);
  const auto check_shift = [&](double a) {
    if (!(a >= 0 && p.delta * L > 28 * a))
      throw ParameterWindowError("need delta log Q > 28 a >= 0 (a = " + fmt(a) + ", bound " + fmt(p.delta * L / 28) + ")");
  };

  switch (theorem) {
    case Theorem::T1: {
      plan.A = p.A.value_or(14.0 / p.delta);
      if (plan.A < 14.0 / p.delta * (1 - kWindowSlack))
        throw ParameterWindowError("Theorem 1 needs A >= 14/delta = " + fmt(14.0 / p.delta) + " (got " + fmt(plan.A) + ")");
      plan.s = 1.0;
      plan.y_ratio = std::pow(L, plan.A);
      break;
    }
    case Theorem::T2:
      plan.s = 1.0;
      plan.y_high = y14;
      break;
    case Theorem::T3: {
      const double y = p.y.value_or(y14);
      const double alpha = p.alpha.value_or(1.0);
      const double ymax = std::pow(p.Q, 2 * std::numbers::pi / 5);
      if (y < y14 * (1 - kWindowSlack) || y > ymax * (1 + kWindowSlack))
        throw ParameterWindowError("Theorem 3 needs (log Q)^{14/delta} = " + fmt(y14) + " <= y <= Q^{2 pi/5} = " +
                                   fmt(ymax) + " (got y = " + fmt(y) + ")");
      if (!(alpha > 1 - p.delta / 28 && alpha < 2 - p.delta / 7))
        throw ParameterWindowError("Theorem 3 needs 1 - delta/28 < alpha < 2 - delta/7 (got alpha = " + fmt(alpha) + ")");
      plan.s = alpha;
      plan.y_high = y;
      break;
    }
    case Theorem::T4: {
      plan.a = p.a.value_or(0.0);
      check_shift(plan.a);
      plan.s = 1 - plan.a / L;
      plan.y_high = y14;
      plan.y_ratio = y14;
      break;
    }
    case Theorem::T5: {
      plan.a = p.a.value_or(0.0);
      check_shift(plan.a);
      if (!p.A) throw ParameterWindowError("Theorem 5 needs A");
      plan.A = *p.A;
      const double lo = 28 * plan.a / (p.delta * L);
      if (!(plan.A > lo && plan.A < 14.0 / p.delta))
        throw ParameterWindowError("Theorem 5 needs 28a/(delta log Q) = " + fmt(lo) + " < A < 14/delta = " +
                                   fmt(14.0 / p.delta) + " (got A = " + fmt(plan.A) + ")");
      plan.s = 1 - plan.a / L;
      plan.y_low = std::pow(L, plan.A);
      plan.y_high = y14;
      plan.f_Q = p.f_Q.value_or(std::log(L));
      plan.threshold = plan.f_Q / std::pow(L, plan.A / 2);
      break;
    }
  }
  if (std::max(plan.y_high, plan.y_ratio) > kMaxSweepPrime)
    throw ConfigurationError("prime range up to " + fmt(std::max(plan.y_high, plan.y_ratio)) +
                             " exceeds the sweep table cap " + fmt(kMaxSweepPrime));
  return plan;
}

nlohmann::ordered_json plan_json(const SweepPlan& plan) {
  nlohmann::ordered_json j;
  j["Q"] = plan.Q;
  j["delta"] = plan.delta;
  j["s"] = plan.s;
  switch (plan.theorem) {
    case Theorem::T1:
      j["A"] = plan.A;
      j["y_product"] = plan.y_ratio;
      break;
    case Theorem::T2:
    case Theorem::T3:
      j["y"] = plan.y_high;
      j["alpha"] = plan.s;
      break;
    case Theorem::T4:
      j["a"] = plan.a;
      j["y"] = plan.y_high;
      break;
    case Theorem::T5:
      j["a"] = plan.a;
      j["A"] = plan.A;
      j["y_low"] = plan.y_low;
      j["y_high"] = plan.y_high;
      j["f_Q"] = plan.f_Q;
      j["threshold"] = plan.threshold;
      break;
  }
  if (plan.theorem != Theorem::T1 && plan.theorem != Theorem::T5) j["c_tol"] = plan.tol_c;
  return j;
}

// ---------------------------------------------------------------------------
// Single-character reference path

TheoremError theorem_error(const DirichletCharacter& chi, const SweepPlan& plan, const PrimeTable& table) {
  TheoremError e;
  e.character_id = chi.id();
  e.q = chi.modulus();
  e.index = chi.index();
  e.conductor = chi.conductor();
  e.order = chi.order();
  e.theorem = plan.theorem;
  e.params = plan;
  const DirichletCoefficients coeffs(chi);
  switch (plan.theorem) {
    case Theorem::T1: {
      const auto L = l_value_at_1(chi).L;
      e.error = L / truncated_euler_product(coeffs, plan.y_ratio, 1.0, table) - 1.0;
      break;
    }
    case Theorem::T5:
      e.error = prime_sum(coeffs, plan.y_high, plan.s, table) - prime_sum(coeffs, plan.y_low, plan.s, table);
      break;
    default: {
      const auto logL = log_l_continued(plan.s, chi);
      e.error = logL - prime_sum(coeffs, plan.y_high, plan.s, table) - c_alpha(coeffs, plan.s, plan.tol_c);
      if (plan.theorem == Theorem::T4) {
        const auto L = dirichlet_l(chi, plan.s);
        e.ratio_error = std::abs(L / truncated_euler_product(coeffs, plan.y_ratio, plan.s, table) - 1.0);
      }
    }
  }
  e.abs_error = std::abs(e.error);
  return e;
}

double theorem1_ratio(const DirichletCharacter& chi, double Q, double delta, double A, const PrimeTable& table) {
  TheoremParams p;
  p.Q = Q;
  p.delta = delta;
  p.A = A;
  return theorem_error(chi, plan_sweep(Theorem::T1, p), table).abs_error;
}

std::complex<double> theorem2_error(const DirichletCharacter& chi, double Q, double delta, const PrimeTable& table) {
  TheoremParams p;
  p.Q = Q;
  p.delta = delta;
  return theorem_error(chi, plan_sweep(Theorem::T2, p), table).error;
}

std::complex<double> theorem3_error(const DirichletCharacter& chi, double Q, double delta, double y, double alpha,
                                    const PrimeTable& table) {
  TheoremParams p;
  p.Q = Q;
  p.delta = delta;
  p.y = y;
  p.alpha = alpha;
  return theorem_error(chi, plan_sweep(Theorem::T3, p), table).error;
}

// ---------------------------------------------------------------------------
// Batch path

namespace {

class ModulusBatch {
 public:
  ModulusBatch(std::shared_ptr<const CharacterGroup> group, const PrimeTable& table)
      : q_(group->modulus()), fourier_(group), table_(table) {}

  CharacterFourier& fourier() { return fourier_; }

  // sum_{lo < p <= hi} chi(p^l) p^{-l s} for every chi
  cvec prime_power_sum(double lo, double hi, double s, int l) {
    std::vector<CompensatedSum> acc(q_);
    const std::size_t i0 = table_.count_up_to(lo), i1 = table_.count_up_to(hi);
    for (std::size_t i = i0; i < i1; ++i) {
      const std::uint64_t p = table_[i];
      if (q_ % p == 0) continue;
      const double w = std::exp(-l * s * table_.log_p()[i]);
      if (l > 1 && w < kBucketFloor) break;
      acc[powmod(p, l, q_)].add(w);
    }
    std::vector<double> f(q_);
    for (std::uint64_t a = 0; a < q_; ++a) f[a] = acc[a].value();
    return fourier_.transform(f);
  }

  // sum_{p <= hi} sum_l chi(p)^l p^{-l s} / l; `first` is the l = 1 term when already known
  cvec log_product(double hi, double s, const cvec* first) {
    cvec out = first ? *first : prime_power_sum(0, hi, s, 1);
    const int lmax = static_cast<int>(std::floor(std::log(1.0 / kBucketFloor) / (s * std::log(2.0))));
    for (int l = 2; l <= lmax; ++l) {
      const cvec t = prime_power_sum(0, hi, s, l);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i] / static_cast<double>(l);
    }
    return out;
  }

  cvec l_values(double sigma) {
    std::vector<double> f(q_, 0.0);
    if (sigma == 1.0) {
      const auto psi = digamma_table(q_);
      for (std::uint64_t a = 1; a < q_; ++a)
        if (fourier_.slot(a) >= 0) f[a] = psi[a];
      cvec out = fourier_.transform(f);
      for (auto& z : out) z /= -static_cast<double>(q_);
      return out;
    }
    for (std::uint64_t a = 1; a < q_; ++a)
      if (fourier_.slot(a) >= 0) f[a] = hurwitz_residue_sum(sigma, a, q_);
    return fourier_.transform(f);
  }

 private:
  std::uint64_t q_;
  CharacterFourier fourier_;
  const PrimeTable& table_;
};

// primes below 100 for the branch choice at the anchor
const std::vector<std::uint32_t>& anchor_primes() {
  static const std::vector<std::uint32_t> ps = [] {
    const auto t = sieve_primes(100);
    return std::vector<std::uint32_t>(t.primes().begin(), t.primes().end());
  }();
  return ps;
}

}  // namespace

std::vector<CharacterOutcome> evaluate_modulus(std::uint64_t q, const SweepPlan& plan, bool real_only,
                                               const PrimeTable& table) {
  const auto group = build_group(q);
  std::vector<DirichletCharacter> chars;
  for (auto& chi : primitive_characters(group))
    if (!real_only || chi.is_real()) chars.push_back(std::move(chi));
  std::vector<CharacterOutcome> out;
  out.reserve(chars.size());
  if (chars.empty()) return out;
  if (q == 1) {
    CharacterOutcome o;
    o.principal = true;
    o.order = 1;
    out.push_back(o);
    return out;
  }

  ModulusBatch batch(group, table);
  const Theorem th = plan.theorem;

  if (th == Theorem::T5) {
    const cvec D = batch.prime_power_sum(plan.y_low, plan.y_high, plan.s, 1);
    for (const auto& chi : chars) {
      CharacterOutcome o;
      o.index = chi.index();
      o.order = chi.order();
      o.error = D[o.index];
      o.abs_error = std::abs(o.error);
      out.push_back(o);
    }
    return out;
  }

  if (th == Theorem::T1) {
    const cvec L1 = batch.l_values(1.0);
    const cvec LP = batch.log_product(plan.y_ratio, 1.0, nullptr);
    for (const auto& chi : chars) {
      CharacterOutcome o;
      o.index = chi.index();
      o.order = chi.order();
      o.error = L1[o.index] * std::exp(-LP[o.index]) - 1.0;
      o.abs_error = std::abs(o.error);
      out.push_back(o);
    }
    return out;
  }

  // Theorems 2-4: log L(s) - sum_{p <= y} chi(p) p^{-s} - C(s)
  const double s = plan.s;
  const cvec PS = batch.prime_power_sum(0, plan.y_high, s, 1);
  cvec LP;
  if (th == Theorem::T4) LP = batch.log_product(plan.y_ratio, s, plan.y_ratio == plan.y_high ? &PS : nullptr);

  std::vector<std::pair<double, cvec>> path;  // grid of the branch continuation
  for (double sigma = kAnchorSigma; sigma > s; sigma -= 0.5) path.emplace_back(sigma, batch.l_values(sigma));
  path.emplace_back(s, batch.l_values(s));
  const std::size_t at_s = path.size() - 1;

  const MobiusTailPlan tail = plan_mobius_tail(1, s, plan.tol_c);
  std::vector<cvec> tail_L;
  for (int n : tail.n) tail_L.push_back(batch.l_values(n * s));
  const auto head = shared_prime_table(tail.prime_cutoff);
  const auto head_primes = head->primes().first(head->count_up_to(static_cast<double>(tail.prime_cutoff)));

  std::vector<std::complex<double>> roots(head_primes.size());
  std::vector<std::complex<double>> lv(tail.n.size());
  for (const auto& chi : chars) {
    CharacterOutcome o;
    o.index = chi.index();
    o.order = chi.order();

    const auto lookup = [&](double sigma) -> std::complex<double> {
      for (const auto& [g, spec] : path)
        if (g == sigma) return spec[o.index];
      return dirichlet_l(chi, sigma);
    };
    std::complex<double> logL;
    try {
      std::complex<double> approx{};
      for (auto p : anchor_primes()) approx -= std::log(1.0 - chi(p) * std::pow(static_cast<double>(p), -kAnchorSigma));
      const auto anchor = nearest_branch(path.front().second[o.index], approx);
      logL = continue_log(s, kAnchorSigma, anchor, lookup);
    } catch (const BranchTrackingError&) {
      o.branch_failed = true;
      out.push_back(o);
      continue;
    }

    for (std::size_t i = 0; i < head_primes.size(); ++i) roots[i] = chi(head_primes[i]);
    for (std::size_t t = 0; t < tail.n.size(); ++t) lv[t] = tail_L[t][batch.fourier().power_index(o.index, tail.n[t])];
    const auto C = c_alpha_mobius(head_primes, 1, roots, s, tail, lv);

    o.error = logL - PS[o.index] - C;
    o.abs_error = std::abs(o.error);
    if (th == Theorem::T4) o.ratio_error = std::abs(path[at_s].second[o.index] * std::exp(-LP[o.index]) - 1.0);
    out.push_back(o);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling, statistics, reports

bool is_stratified(std::uint64_t Q, const SamplePolicy& policy) {
  switch (policy.mode) {
    case SamplePolicy::Mode::full: return false;
    case SamplePolicy::Mode::stratified: return true;
    case SamplePolicy::Mode::automatic: return Q > kFullSweepMaxQ;
  }
  return false;
}

std::vector<std::uint64_t> select_moduli(std::uint64_t Q, const SamplePolicy& policy) {
  std::vector<std::uint64_t> qs;
  if (!is_stratified(Q, policy)) {
    for (std::uint64_t q = 1; q <= Q; ++q) qs.push_back(q);
    return qs;
  }
  std::mt19937_64 rng(policy.seed);
  for (std::uint64_t q = 1; q <= Q; ++q) {
    if (q == 1 || is_prime(q)) {
      qs.push_back(q);
      continue;
    }
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u < policy.fraction) qs.push_back(q);
  }
  return qs;
}

double percentile_sorted(const std::vector<double>& v, double p) {
  if (v.empty()) return 0.0;
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

ErrorStats summarize(std::vector<double> values, double compensated_mean) {
  ErrorStats st;
  if (values.empty()) return st;
  std::sort(values.begin(), values.end());
  st.max = values.back();
  st.mean = compensated_mean;
  st.median = percentile_sorted(values, 0.5);
  st.p90 = percentile_sorted(values, 0.9);
  st.p99 = percentile_sorted(values, 0.99);
  return st;
}

namespace {

nlohmann::ordered_json stats_json(const ErrorStats& s) {
  return {{"max", s.max}, {"mean", s.mean}, {"median", s.median}, {"p90", s.p90}, {"p99", s.p99}};
}

// true if a ranks before b: larger error first, then smaller (q, index)
bool ranks_before(double ea, std::uint64_t qa, std::uint64_t ia, double eb, std::uint64_t qb, std::uint64_t ib) {
  if (ea != eb) return ea > eb;
  if (qa != qb) return qa < qb;
  return ia < ib;
}

class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}
  void push(Outlier o) {
    if (k_ == 0) return;
    const auto cmp = [](const Outlier& a, const Outlier& b) {
      return ranks_before(a.abs_error, a.q, a.index, b.abs_error, b.q, b.index);
    };
    if (heap_.size() < k_) {
      heap_.push_back(std::move(o));
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    } else if (cmp(o, heap_.front())) {
      std::pop_heap(heap_.begin(), heap_.end(), cmp);
      heap_.back() = std::move(o);
      std::push_heap(heap_.begin(), heap_.end(), cmp);
    }
  }
  std::vector<Outlier> sorted() const {
    auto v = heap_;
    std::sort(v.begin(), v.end(), [](const Outlier& a, const Outlier& b) {
      return ranks_before(a.abs_error, a.q, a.index, b.abs_error, b.q, b.index);
    });
    return v;
  }

 private:
  std::size_t k_;
  std::vector<Outlier> heap_;  // heap top = weakest kept entry
};

double large_sieve_shape(const SweepPlan& plan, const PrimeTable& table) {
  CompensatedSum acc;
  for (std::size_t i = table.count_up_to(plan.y_low); i < table.count_up_to(plan.y_high); ++i)
    acc.add(std::exp(-2 * plan.s * table.log_p()[i]));
  const double L = std::log(plan.Q);
  return (plan.Q * plan.Q + std::pow(L, 14.0 / plan.delta)) * acc.value();
}

}  // namespace

nlohmann::ordered_json report_json(const SweepReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["theorem"] = to_string(r.theorem);
  j["parameters"] = plan_json(r.plan);
  j["sample"] = {{"policy", r.stratified ? "stratified" : "full"},
                 {"seed", r.sample.seed},
                 {"fraction", r.stratified ? r.sample.fraction : 1.0},
                 {"real_only", r.sample.real_only},
                 {"moduli_visited", r.moduli_visited}};
  j["counts"] = {{"enumerated", r.enumerated},
                 {"included", r.included},
                 {"excluded", r.excluded()},
                 {"excluded_principal", r.excluded_principal},
                 {"excluded_branch", r.excluded_branch},
                 {"nonfinite", r.nonfinite}};
  j["statistics"] = stats_json(r.stats);
  auto outs = nlohmann::ordered_json::array();
  for (const auto& o : r.outliers)
    outs.push_back({{"id", o.id},
                    {"q", o.q},
                    {"index", o.index},
                    {"conductor", o.conductor},
                    {"order", o.order},
                    {"abs_error", o.abs_error}});
  j["outliers"] = outs;
  j["outlier_budget"] = std::pow(r.plan.Q, r.plan.delta);
  j["branch_failures"] = r.branch_failures;
  j["extras"] = r.extras;
  if (r.wall_time) j["wall_time_s"] = *r.wall_time;
  return j;
}

SweepReport run_sweep(const SweepConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepPlan plan = plan_sweep(cfg.theorem, cfg.params);
  const auto Q = static_cast<std::uint64_t>(cfg.params.Q);
  const auto moduli = select_moduli(Q, cfg.sample);
  const double need = std::max({plan.y_high, plan.y_ratio, 1000.0});
  const auto table = shared_prime_table(static_cast<std::uint64_t>(std::ceil(need)));

  SweepReport rep;
  rep.theorem = cfg.theorem;
  rep.plan = plan;
  rep.sample = cfg.sample;
  rep.stratified = is_stratified(Q, cfg.sample);
  rep.moduli_visited = moduli.size();

  std::ofstream csv;
  if (!cfg.csv_path.empty()) {
    csv.open(cfg.csv_path);
    if (!csv) throw ConfigurationError("cannot open CSV output " + cfg.csv_path);
    csv << kCsvHeader << '\n';
    csv.precision(17);
  }

  std::vector<double> abs_errors, ratio_errors;
  CompensatedSum mean_acc, ratio_mean_acc, moment_acc;
  std::uint64_t exceed = 0;
  TopK top(cfg.top_k);

  const int threads = std::max(1, cfg.threads);
  for (std::size_t start = 0; start < moduli.size(); start += kChunk) {
    const std::size_t n = std::min(kChunk, moduli.size() - start);
    std::vector<std::vector<CharacterOutcome>> results(n);
    if (threads == 1) {
      for (std::size_t i = 0; i < n; ++i) results[i] = evaluate_modulus(moduli[start + i], plan, cfg.sample.real_only, *table);
    } else {
      std::atomic<std::size_t> next{0};
      std::exception_ptr err;
      std::mutex err_mu;
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
          for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
              results[i] = evaluate_modulus(moduli[start + i], plan, cfg.sample.real_only, *table);
            } catch (...) {
              std::lock_guard<std::mutex> lock(err_mu);
              if (!err) err = std::current_exception();
            }
          }
        });
      }
      for (auto& th : pool) th.join();
      if (err) std::rethrow_exception(err);
    }

    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t q = moduli[start + i];
      for (const auto& o : results[i]) {
        ++rep.enumerated;
        const std::string id = std::to_string(q) + ":" + std::to_string(o.index);
        if (o.principal) {
          ++rep.excluded_principal;
          continue;
        }
        if (o.branch_failed) {
          ++rep.excluded_branch;
          rep.branch_failures.push_back(id);
          continue;
        }
        ++rep.included;
        if (!std::isfinite(o.abs_error)) ++rep.nonfinite;
        abs_errors.push_back(o.abs_error);
        mean_acc.add(o.abs_error);
        top.push({id, q, o.index, q, o.order, o.abs_error});
        if (o.ratio_error) {
          ratio_errors.push_back(*o.ratio_error);
          ratio_mean_acc.add(*o.ratio_error);
        }
        if (plan.theorem == Theorem::T5) {
          if (o.abs_error > plan.threshold) ++exceed;
          moment_acc.add(o.abs_error * o.abs_error);
        }
        if (csv) {
          csv << q << ',' << o.index << ',' << q << ',' << o.order << ',' << o.error.real() << ',' << o.error.imag()
              << ',' << o.abs_error << '\n';
        }
      }
    }
  }

  const double cnt = static_cast<double>(std::max<std::uint64_t>(rep.included, 1));
  rep.stats = summarize(abs_errors, mean_acc.value() / cnt);
  rep.outliers = top.sorted();
  if (plan.theorem == Theorem::T4) {
    rep.extras["ratio_error"] = stats_json(summarize(ratio_errors, ratio_mean_acc.value() / cnt));
    rep.extras["s"] = plan.s;
  }
  if (plan.theorem == Theorem::T5) {
    const double shape = large_sieve_shape(plan, *table);
    rep.extras["threshold"] = plan.threshold;
    rep.extras["exceeding"] = exceed;
    rep.extras["fraction_exceeding"] = static_cast<double>(exceed) / cnt;
    rep.extras["second_moment_sum"] = moment_acc.value();
    rep.extras["large_sieve_shape"] = shape;
    rep.extras["second_moment_ratio"] = moment_acc.value() / shape;
  }
  if (cfg.timing) rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

namespace {
SweepReport sweep_with(Theorem t, TheoremParams p, const SamplePolicy& policy) {
  SweepConfig cfg;
  cfg.theorem = t;
  cfg.params = std::move(p);
  cfg.sample = policy;
  return run_sweep(cfg);
}
}  // namespace

SweepReport sweep_theorem1(std::uint64_t Q, double delta, double A, const SamplePolicy& policy) {
  TheoremParams p;
  p.Q = static_cast<double>(Q);
  p.delta = delta;
  p.A = A;
  return sweep_with(Theorem::T1, p, policy);
}

SweepReport sweep_theorem2(std::uint64_t Q, double delta, const SamplePolicy& policy) {
  TheoremParams p;
  p.Q = static_cast<double>(Q);
  p.delta = delta;
  return sweep_with(Theorem::T2, p, policy);
}

SweepReport sweep_theorem3(std::uint64_t Q, double delta, double y, double alpha, const SamplePolicy& policy) {
  TheoremParams p;
  p.Q = static_cast<double>(Q);
  p.delta = delta;
  p.y = y;
  p.alpha = alpha;
  return sweep_with(Theorem::T3, p, policy);
}

SweepReport sweep_theorem4(std::uint64_t Q, double delta, double a, const SamplePolicy& policy) {
  TheoremParams p;
  p.Q = static_cast<double>(Q);
  p.delta = delta;
  p.a = a;
  return sweep_with(Theorem::T4, p, policy);
}

SweepReport sweep_theorem5(std::uint64_t Q, double delta, double a, double A, const SamplePolicy& policy) {
  TheoremParams p;
  p.Q = static_cast<double>(Q);
  p.delta = delta;
  p.a = a;
  p.A = A;
  return sweep_with(Theorem::T5, p, policy);
}

std::vector<TheoremError> outlier_report(std::vector<TheoremError> errors, std::size_t k) {
  std::sort(errors.begin(), errors.end(), [](const TheoremError& a, const TheoremError& b) {
    return ranks_before(a.abs_error, a.q, a.index, b.abs_error, b.q, b.index);
  });
  if (errors.size() > k) errors.resize(k);
  return errors;
}

}  // namespace eulertrunc

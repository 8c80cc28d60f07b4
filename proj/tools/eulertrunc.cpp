#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "eulertrunc/characters.hpp"
#include "eulertrunc/errors.hpp"
#include "eulertrunc/harness.hpp"
#include "eulertrunc/l_oracle.hpp"
#include "eulertrunc/lfunc_model.hpp"
#include "eulertrunc/mellin.hpp"
#include "eulertrunc/primes.hpp"
#include "eulertrunc/serialize.hpp"

using namespace eulertrunc;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitWindow = 2;
constexpr int kExitBranch = 3;

void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ConfigurationError("cannot write " + out);
  f << text;
}

json sieve_report(std::uint64_t limit) {
  const auto t = sieve_primes(limit);
  const double x = static_cast<double>(limit);
  json j;
  j["limit"] = limit;
  j["count"] = t.size();
  j["largest"] = t.size() ? t[t.size() - 1] : 0;
  j["mertens_sum"] = mertens_sum(x, t);
  j["chebyshev_sum"] = chebyshev_sum(x, t);
  return j;
}

json chars_report(std::uint64_t q, bool primitive_only) {
  const auto g = build_group(q);
  json j;
  j["q"] = q;
  j["phi"] = g->phi();
  auto orders = json::array();
  for (const auto& c : g->components()) orders.push_back(c.order);
  j["component_orders"] = orders;
  j["primitive_count"] = primitive_count(q);
  auto list = json::array();
  for (std::uint64_t i = 0; i < g->phi(); ++i) {
    const auto chi = DirichletCharacter::from_index(g, i);
    if (primitive_only && !chi.is_primitive()) continue;
    list.push_back(character_json(chi));
  }
  j["characters"] = list;
  return j;
}

json lvalue_report(std::uint64_t q, std::uint64_t index, double s) {
  const auto g = build_group(q);
  if (index >= g->phi()) throw DomainError("character index out of range (phi(q) = " + std::to_string(g->phi()) + ")");
  const auto chi = DirichletCharacter::from_index(g, index);
  json j = character_json(chi);
  j["value"] = lvalue_json(l_value_with_log(s, chi));
  return j;
}

struct LambdaConfig {
  std::string label;
  std::string instance;
  double cutoff, u, v;
};

json mellin_report() {
  json j;
  auto scalar = json::array();
  double worst = 0, worst_pair = 0;
  for (double w : {0.5, 1.0, 2.0, 5.0}) {
    double vals[3];
    int k = 0;
    for (double c : {0.8, 1.25, 2.0}) {
      const auto z = mellin_scalar(w, {c, 100.0, 0.01});
      const double res = std::abs(z - std::exp(-w));
      worst = std::max(worst, res);
      vals[k++] = z.real();
      scalar.push_back({{"w", w}, {"c", c}, {"residual", res}});
    }
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) worst_pair = std::max(worst_pair, std::abs(vals[a] - vals[b]));
  }
  j["scalar"] = scalar;
  j["scalar_max_residual"] = worst;
  j["contour_independence_max"] = worst_pair;

  const auto table = shared_prime_table(100000);
  auto lam = json::array();
  double worst_lambda = 0;
  const auto run = [&](const std::string& label, const EulerCoefficients& coeffs, double cutoff, double u, double v) {
    const ContourSpec spec{3.0 - u, 100.0, std::min(0.01, 1.0 / (4 * std::log(v) + 1))};
    const auto smooth = smoothed_lambda_sum(coeffs, cutoff, u, v, *table);
    const auto contour = contour_lambda_integral(coeffs, cutoff, u, v, spec);
    const double res = std::abs(smooth - contour);
    worst_lambda = std::max(worst_lambda, res);
    lam.push_back({{"instance", label},
                   {"cutoff", cutoff},
                   {"u", u},
                   {"v", v},
                   {"c", spec.c},
                   {"smoothed", complex_json(smooth)},
                   {"contour", complex_json(contour)},
                   {"residual", res}});
  };
  const auto g4 = build_group(4);
  run("chi_4", DirichletCoefficients(DirichletCharacter::from_index(g4, 1)), 10, 1.5, 100);
  run("synthetic m=2 seed=7", SyntheticCoefficients(2, 7), 20, 1.3, 50);
  j["lambda"] = lam;
  j["lambda_max_residual"] = worst_lambda;
  j["pass"] = worst < 1e-6 && worst_pair < 2e-6 && worst_lambda < 1e-5;
  return j;
}

bool selftest() {
  bool ok = true;
  const auto check = [&](const char* name, bool pass) {
    std::printf("%-34s %s\n", name, pass ? "ok" : "FAIL");
    ok = ok && pass;
  };
  const auto g4 = build_group(4), g3 = build_group(3);
  const auto chi4 = DirichletCharacter::from_index(g4, 1), chi3 = DirichletCharacter::from_index(g3, 1);
  check("L(1, chi_4) = pi/4", std::abs(l_value_at_1(chi4).L - std::numbers::pi / 4) < 1e-12);
  check("L(1, chi_3) = pi/(3 sqrt 3)", std::abs(l_value_at_1(chi3).L - std::numbers::pi / (3 * std::sqrt(3.0))) < 1e-12);
  const auto t = sieve_primes(1000000);
  check("pi(10^6) = 78498", t.size() == 78498);
  check("primitive count, conductor <= 4", primitive_count(1) + primitive_count(2) + primitive_count(3) +
                                               primitive_count(4) == 3);
  check("mellin scalar at w = 1", std::abs(mellin_scalar(1.0, {}) - std::exp(-1.0)) < 1e-6);
  const auto lg = log_l_continued(1.0, chi4);
  check("exp(log L) = L", std::abs(std::exp(lg) - l_value_at_1(chi4).L) < 1e-12);
  return ok;
}

SamplePolicy::Mode parse_mode(const std::string& s) {
  if (s == "auto") return SamplePolicy::Mode::automatic;
  if (s == "full") return SamplePolicy::Mode::full;
  if (s == "stratified") return SamplePolicy::Mode::stratified;
  throw DomainError("--sample must be auto, full or stratified");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Euler products and log L near s = 1: oracles, checks and sweeps"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(40);

  std::string out;

  auto* sieve = app.add_subcommand("sieve", "sieve primes and print elementary prime sums");
  std::uint64_t limit = 1000000;
  sieve->add_option("--limit", limit, "sieve bound")->envname("EULERTRUNC_LIMIT")->capture_default_str();
  sieve->add_option("--out", out, "output path ('-' for stdout)")->capture_default_str();

  auto* chars = app.add_subcommand("chars", "list the characters mod q as JSON");
  std::uint64_t chars_q = 0;
  bool primitive_only = false;
  chars->add_option("q", chars_q, "modulus")->required();
  chars->add_flag("--primitive", primitive_only, "only primitive characters");
  chars->add_option("--out", out, "output path ('-' for stdout)")->capture_default_str();

  auto* lvalue = app.add_subcommand("lvalue", "L(s, chi) and branch-tracked log L(s, chi)");
  std::uint64_t lv_q = 0, lv_index = 0;
  double lv_s = 1.0;
  lvalue->add_option("q", lv_q, "modulus")->required();
  lvalue->add_option("index", lv_index, "character index (row-major exponent index)")->required();
  lvalue->add_option("--s", lv_s, "evaluation point in (0.8, 4]")->envname("EULERTRUNC_S")->capture_default_str();
  lvalue->add_option("--out", out, "output path ('-' for stdout)")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "theorem sweep over primitive characters of conductor <= Q");
  int theorem = 2;
  double Q = 100, delta = 3.5;
  std::optional<double> A, a, y, alpha, fQ;
  std::uint64_t seed = 0;
  std::string sample = "auto", csv;
  double fraction = 0.1;
  bool real_only = false, timing = false;
  int threads = 1;
  std::size_t top_k = 10;
  sweep->add_option("--theorem", theorem, "1..5")->envname("EULERTRUNC_THEOREM")->capture_default_str();
  sweep->add_option("--Q", Q, "maximal conductor (>= 16)")->envname("EULERTRUNC_Q")->capture_default_str();
  sweep->add_option("--delta", delta, "delta in (0, 7/2]")->envname("EULERTRUNC_DELTA")->capture_default_str();
  sweep->add_option("--A", A, "product/sum exponent (T1 default 14/delta; required for T5)")->envname("EULERTRUNC_A");
  sweep->add_option("--a", a, "shift, s = 1 - a/log Q (T4, T5; default 0)")->envname("EULERTRUNC_SHIFT_A");
  sweep->add_option("--y", y, "prime range (T3; default (log Q)^{14/delta})")->envname("EULERTRUNC_Y");
  sweep->add_option("--alpha", alpha, "evaluation point (T3; default 1)")->envname("EULERTRUNC_ALPHA");
  sweep->add_option("--fQ", fQ, "threshold numerator (T5; default log log Q)")->envname("EULERTRUNC_FQ");
  sweep->add_option("--seed", seed, "sampling seed")->envname("EULERTRUNC_SEED")->capture_default_str();
  sweep->add_option("--sample", sample, "auto | full | stratified (auto: full when Q <= 2000)")
      ->envname("EULERTRUNC_SAMPLE")
      ->capture_default_str();
  sweep->add_option("--fraction", fraction, "composite moduli fraction when stratified")
      ->envname("EULERTRUNC_FRACTION")
      ->capture_default_str();
  sweep->add_flag("--real-only", real_only, "only real (quadratic) characters")->envname("EULERTRUNC_REAL_ONLY");
  sweep->add_option("--threads", threads, "worker threads")->envname("EULERTRUNC_THREADS")->capture_default_str();
  sweep->add_option("--top-k", top_k, "outliers kept")->envname("EULERTRUNC_TOP_K")->capture_default_str();
  sweep->add_option("--dump-csv", csv, "per-character CSV dump")->envname("EULERTRUNC_DUMP_CSV");
  sweep->add_flag("--timing", timing, "include wall time (breaks byte-identical reports)");
  sweep->add_option("--out", out, "report path ('-' for stdout)")->envname("EULERTRUNC_OUT")->capture_default_str();

  auto* mellin = app.add_subcommand("mellin-check", "residuals of the Mellin identities");
  mellin->add_option("--out", out, "report path ('-' for stdout)")->capture_default_str();

  auto* self = app.add_subcommand("selftest", "quick consistency checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sieve) {
      emit(sieve_report(limit), out);
    } else if (*chars) {
      emit(chars_report(chars_q, primitive_only), out);
    } else if (*lvalue) {
      emit(lvalue_report(lv_q, lv_index, lv_s), out);
    } else if (*sweep) {
      if (Q != std::floor(Q)) throw ParameterWindowError("--Q must be an integer");
      SweepConfig cfg;
      cfg.theorem = theorem_from_int(theorem);
      cfg.params = {Q, delta, A, a, y, alpha, fQ};
      cfg.sample = {parse_mode(sample), seed, fraction, real_only};
      cfg.threads = threads;
      cfg.top_k = top_k;
      cfg.csv_path = csv;
      cfg.timing = timing;
      const auto rep = run_sweep(cfg);
      emit(report_json(rep), out);
      if (rep.excluded_branch > 0) {
        std::fprintf(stderr, "branch tracking failed for %llu characters\n",
                     static_cast<unsigned long long>(rep.excluded_branch));
        return kExitBranch;
      }
    } else if (*mellin) {
      const auto j = mellin_report();
      emit(j, out);
      return j["pass"].get<bool>() ? 0 : 1;
    } else if (*self) {
      return selftest() ? 0 : 1;
    }
  } catch (const ParameterWindowError& e) {
    std::fprintf(stderr, "parameter window: %s\n", e.what());
    return kExitWindow;
  } catch (const ConfigurationError& e) {
    std::fprintf(stderr, "configuration: %s\n", e.what());
    return kExitWindow;
  } catch (const BranchTrackingError& e) {
    std::fprintf(stderr, "branch tracking: %s\n", e.what());
    return kExitBranch;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

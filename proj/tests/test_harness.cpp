#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"

#include "eulertrunc/characters.hpp"
#include "eulertrunc/errors.hpp"
#include "eulertrunc/group_fourier.hpp"
#include "eulertrunc/harness.hpp"
#include "eulertrunc/l_oracle.hpp"
#include "eulertrunc/lfunc_model.hpp"

using namespace eulertrunc;

namespace {

const PrimeTable& table() {
  static const auto t = shared_prime_table(2000000);
  return *t;
}

TheoremParams params(double Q, double delta) {
  TheoremParams p;
  p.Q = Q;
  p.delta = delta;
  return p;
}

SamplePolicy full() {
  SamplePolicy s;
  s.mode = SamplePolicy::Mode::full;
  return s;
}

std::uint64_t primitive_total(std::uint64_t Q) {
  std::uint64_t n = 0;
  for (std::uint64_t q = 1; q <= Q; ++q) n += primitive_count(q);
  return n;
}

// batch outcomes against the single-character reference path
void cross_check(const SweepPlan& plan, std::initializer_list<std::uint64_t> moduli, double tol) {
  for (auto q : moduli) {
    const auto batch = evaluate_modulus(q, plan, false, table());
    const auto chars = primitive_characters(build_group(q));
    REQUIRE(batch.size() == chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i) {
      CAPTURE(chars[i].id());
      REQUIRE(batch[i].index == chars[i].index());
      REQUIRE_FALSE(batch[i].branch_failed);
      const auto ref = theorem_error(chars[i], plan, table());
      CHECK(std::abs(batch[i].error - ref.error) < tol);
      CHECK(std::abs(batch[i].abs_error - ref.abs_error) < tol);
      if (ref.ratio_error) {
        REQUIRE(batch[i].ratio_error);
        CHECK(std::abs(*batch[i].ratio_error - *ref.ratio_error) < tol);
      }
    }
  }
}

}  // namespace

TEST_CASE("parameter windows") {
  CHECK_THROWS_AS(plan_sweep(Theorem::T2, params(15, 3.5)), ParameterWindowError);
  CHECK_THROWS_AS(plan_sweep(Theorem::T2, params(100, 0)), ParameterWindowError);
  CHECK_THROWS_AS(plan_sweep(Theorem::T2, params(100, 3.6)), ParameterWindowError);
  CHECK_NOTHROW(plan_sweep(Theorem::T2, params(16, 3.5)));

  auto p1 = params(1000, 3.5);
  p1.A = 3.9;
  CHECK_THROWS_AS(plan_sweep(Theorem::T1, p1), ParameterWindowError);
  p1.A = 4.0;
  CHECK(plan_sweep(Theorem::T1, p1).y_ratio == doctest::Approx(std::pow(std::log(1000.0), 4)));

  auto p3 = params(500, 3.5);
  p3.y = 1000;  // below (log 500)^4 ~ 1491.6
  CHECK_THROWS_AS(plan_sweep(Theorem::T3, p3), ParameterWindowError);
  p3.y = std::pow(500.0, 2 * 3.14159265358979 / 5) * 1.01;
  CHECK_THROWS_AS(plan_sweep(Theorem::T3, p3), ParameterWindowError);
  p3.y = 2000;
  p3.alpha = 0.875;  // 1 - delta/28
  CHECK_THROWS_AS(plan_sweep(Theorem::T3, p3), ParameterWindowError);
  p3.alpha = 1.5;  // 2 - delta/7
  CHECK_THROWS_AS(plan_sweep(Theorem::T3, p3), ParameterWindowError);
  p3.alpha = 1.2;
  CHECK_NOTHROW(plan_sweep(Theorem::T3, p3));

  auto p4 = params(1000, 3.5);
  p4.a = 3.5 * std::log(1000.0) / 28;
  CHECK_THROWS_AS(plan_sweep(Theorem::T4, p4), ParameterWindowError);
  p4.a = -0.1;
  CHECK_THROWS_AS(plan_sweep(Theorem::T4, p4), ParameterWindowError);
  p4.a = 0.5;
  CHECK(plan_sweep(Theorem::T4, p4).s == doctest::Approx(1 - 0.5 / std::log(1000.0)));

  auto p5 = params(1000, 3.5);
  CHECK_THROWS_AS(plan_sweep(Theorem::T5, p5), ParameterWindowError);  // A is required
  p5.a = 0;
  p5.A = 4.0;
  CHECK_THROWS_AS(plan_sweep(Theorem::T5, p5), ParameterWindowError);
  p5.A = 0.0;
  CHECK_THROWS_AS(plan_sweep(Theorem::T5, p5), ParameterWindowError);
  p5.A = 2.0;
  const auto plan5 = plan_sweep(Theorem::T5, p5);
  CHECK(plan5.f_Q == doctest::Approx(std::log(std::log(1000.0))));
  CHECK(plan5.threshold == doctest::Approx(plan5.f_Q / std::log(1000.0)));

  // (log 10^4)^{28} is far beyond the table cap
  CHECK_THROWS_AS(plan_sweep(Theorem::T2, params(10000, 0.5)), ConfigurationError);
}

TEST_CASE("Q = 16 sweep covers every primitive character") {
  const auto rep = sweep_theorem2(16, 3.5, full());
  CHECK(rep.plan.y_high == doctest::Approx(59.0937852373));
  CHECK(rep.enumerated == primitive_total(16));
  CHECK(rep.included + rep.excluded() == rep.enumerated);
  CHECK(rep.excluded_principal == 1);
  CHECK(rep.excluded_branch == 0);
  cross_check(rep.plan, {3, 4, 5, 7, 8, 9, 11, 12, 13, 15, 16}, 1e-10);
}

TEST_CASE("batch and reference paths agree for every theorem") {
  auto p1 = params(200, 3.5);
  p1.A = 5;
  cross_check(plan_sweep(Theorem::T1, p1), {5, 24, 37, 64}, 1e-10);
  cross_check(plan_sweep(Theorem::T2, params(200, 3.5)), {21, 32, 43, 100}, 1e-10);
  auto p3 = params(500, 3.5);
  p3.y = 2000;
  p3.alpha = 1.2;
  cross_check(plan_sweep(Theorem::T3, p3), {7, 40, 81}, 1e-10);
  p3.alpha = 0.9;
  cross_check(plan_sweep(Theorem::T3, p3), {7, 40, 81}, 1e-10);
  auto p4 = params(10000, 3.5);
  p4.a = 1;
  cross_check(plan_sweep(Theorem::T4, p4), {19, 48, 125}, 1e-10);
  auto p5 = params(1000, 3.5);
  p5.a = 0.5;
  p5.A = 2;
  cross_check(plan_sweep(Theorem::T5, p5), {11, 60, 97}, 1e-10);
}

TEST_CASE("theorem 3 at alpha = 1 and y = (log Q)^{14/delta} reproduces theorem 2") {
  const auto plan2 = plan_sweep(Theorem::T2, params(300, 3.5));
  const auto plan3 = plan_sweep(Theorem::T3, params(300, 3.5));
  for (std::uint64_t q : {5ull, 36ull, 101ull, 256ull, 299ull}) {
    const auto a = evaluate_modulus(q, plan2, false, table());
    const auto b = evaluate_modulus(q, plan3, false, table());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i].error - b[i].error) < 1e-10);
  }
}

TEST_CASE("real characters at Q = 100: exp(sum + C) within a factor 3 of L(1)") {
  const auto plan = plan_sweep(Theorem::T2, params(100, 3.5));
  std::size_t n = 0;
  for (std::uint64_t q = 1; q <= 100; ++q) {
    for (const auto& o : evaluate_modulus(q, plan, true, table())) {
      if (o.principal) continue;
      ++n;
      REQUIRE(std::isfinite(o.abs_error));
      const double factor = std::exp(-o.error.real());  // exp(sum + C) / L(1)
      CHECK(factor > 1.0 / 3);
      CHECK(factor < 3.0);
      CHECK(std::abs(o.error.imag()) < 1e-12);
    }
  }
  CHECK(n > 50);
}

TEST_CASE("conjugate characters give conjugate errors") {
  const auto plan = plan_sweep(Theorem::T2, params(200, 3.5));
  for (std::uint64_t q : {7ull, 63ull, 128ull, 199ull}) {
    const auto g = build_group(q);
    const auto out = evaluate_modulus(q, plan, false, table());
    CharacterFourier F(g);
    std::map<std::uint64_t, std::complex<double>> by_index;
    for (const auto& o : out) by_index[o.index] = o.error;
    for (const auto& o : out) {
      const auto bar = F.power_index(o.index, -1);
      REQUIRE(by_index.count(bar));
      CHECK(std::abs(by_index[bar] - std::conj(o.error)) < 1e-12);
    }
  }
}

TEST_CASE("theorem 1 with an empty product") {
  auto plan = plan_sweep(Theorem::T1, params(100, 3.5));
  plan.y_ratio = 1.5;
  const auto chi = DirichletCharacter::from_index(build_group(4), 1);
  const auto e = theorem_error(chi, plan, table());
  CHECK(std::abs(e.error - (l_value_at_1(chi).L - 1.0)) < 1e-15);
}

TEST_CASE("theorem 1: the longer product is better for most characters") {
  auto p4 = params(1000, 3.5), p6 = params(1000, 3.5);
  p4.A = 4;
  p6.A = 6;
  const auto a = plan_sweep(Theorem::T1, p4), b = plan_sweep(Theorem::T1, p6);
  std::size_t better = 0, total = 0;
  std::vector<double> errs;
  for (std::uint64_t q = 1; q <= 1000; q += 7) {
    const auto x = evaluate_modulus(q, a, false, table()), y = evaluate_modulus(q, b, false, table());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].principal) continue;
      ++total;
      better += y[i].abs_error <= x[i].abs_error;
      errs.push_back(x[i].abs_error);
    }
  }
  std::sort(errs.begin(), errs.end());
  CHECK(percentile_sorted(errs, 0.99) < 1.0);
  CHECK(static_cast<double>(better) >= 0.9 * static_cast<double>(total));
}

TEST_CASE("theorem 3: corollary form alpha = 1 - a/log y") {
  auto p = params(500, 3.5);
  const double y = std::pow(std::log(500.0), 4);
  p.y = y;
  p.alpha = 1 - 0.5 / std::log(y);
  SweepConfig cfg;
  cfg.theorem = Theorem::T3;
  cfg.params = p;
  const auto rep = run_sweep(cfg);
  CHECK(rep.nonfinite == 0);
  CHECK(rep.excluded_branch == 0);
  CHECK(std::isfinite(rep.stats.max));
}

TEST_CASE("theorem 4 at a = 1, Q = 10^4 on sample moduli") {
  auto p = params(10000, 3.5);
  p.a = 1;
  const auto plan = plan_sweep(Theorem::T4, p);
  CHECK(plan.s == doctest::Approx(1 - 1 / std::log(1e4)));
  CHECK(plan.s == doctest::Approx(0.8914).epsilon(1e-4));
  for (std::uint64_t q : {1024ull, 5000ull, 7919ull}) {
    const auto out = evaluate_modulus(q, plan, false, table());
    const auto chars = primitive_characters(build_group(q));
    std::mt19937_64 rng(q);
    for (std::size_t i = 0; i < out.size(); ++i) {
      REQUIRE_FALSE(out[i].branch_failed);
      REQUIRE(std::isfinite(out[i].abs_error));
      if (rng() % 64) continue;
      // ratio form is the algebraic identity |L(s) prod (1 - chi(p) p^{-s}) - 1|
      const DirichletCoefficients c(chars[i]);
      const auto L = dirichlet_l(chars[i], plan.s);
      const double direct = std::abs(L / truncated_euler_product(c, plan.y_ratio, plan.s, table()) - 1.0);
      CHECK(std::abs(*out[i].ratio_error - direct) < 1e-10);
    }
  }
}

TEST_CASE("theorem 5 with an empty prime range") {
  auto p = params(1000, 3.5);
  p.a = 0;
  p.A = 4.0 - 1e-9;
  SweepConfig cfg;
  cfg.theorem = Theorem::T5;
  cfg.params = p;
  const auto rep = run_sweep(cfg);
  CHECK(rep.stats.max == 0.0);
  CHECK(rep.extras["exceeding"] == 0);
}

TEST_CASE("report invariants, determinism and worker independence") {
  SweepConfig cfg;
  cfg.theorem = Theorem::T2;
  cfg.params = params(150, 2.5);
  cfg.sample = full();
  const auto a = run_sweep(cfg);
  cfg.threads = 3;
  const auto b = run_sweep(cfg);
  CHECK(report_json(a).dump() == report_json(b).dump());
  CHECK(a.enumerated == primitive_total(150));
  CHECK(a.included + a.excluded() == a.enumerated);
  CHECK(a.stats.median <= a.stats.p90);
  CHECK(a.stats.p90 <= a.stats.p99);
  CHECK(a.stats.p99 <= a.stats.max);
  REQUIRE(a.outliers.size() == 10);
  for (std::size_t i = 1; i < a.outliers.size(); ++i) CHECK(a.outliers[i - 1].abs_error >= a.outliers[i].abs_error);
  CHECK(a.outliers[0].abs_error == a.stats.max);
  const auto j = report_json(a);
  CHECK(j["schema"] == kReportSchema);
  CHECK_FALSE(j.contains("wall_time_s"));
  cfg.timing = true;
  CHECK(report_json(run_sweep(cfg)).contains("wall_time_s"));
}

TEST_CASE("stratified sample") {
  SamplePolicy s;
  s.seed = 5;
  CHECK_FALSE(is_stratified(2000, s));
  CHECK(is_stratified(2001, s));
  const auto m = select_moduli(5000, s);
  CHECK(m == select_moduli(5000, s));
  CHECK(m.front() == 1);
  std::size_t composites = 0;
  for (std::uint64_t q = 2; q <= 5000; ++q) {
    const bool in = std::binary_search(m.begin(), m.end(), q);
    if (is_prime(q)) CHECK(in);
    composites += !is_prime(q) && in;
  }
  CHECK(composites > 300);
  CHECK(composites < 500);
  s.seed = 6;
  CHECK(select_moduli(5000, s) != m);
  CHECK(select_moduli(100, full()).size() == 100);
}

TEST_CASE("median at Q = 10^4 does not exceed the median at Q = 100 (real characters)") {
  SweepConfig cfg;
  cfg.theorem = Theorem::T2;
  cfg.sample.real_only = true;
  cfg.params = params(100, 3.5);
  const double small = run_sweep(cfg).stats.median;
  cfg.params = params(10000, 3.5);
  const auto big = run_sweep(cfg);
  CHECK(big.stratified);
  CHECK(big.stats.median <= small);
}

TEST_CASE("percentiles") {
  const std::vector<double> v{1, 2, 3, 4, 5};
  CHECK(percentile_sorted(v, 0.5) == 3);
  CHECK(percentile_sorted(v, 0.9) == doctest::Approx(4.6));
  CHECK(percentile_sorted(v, 1.0) == 5);
  CHECK(percentile_sorted({}, 0.5) == 0);
  CHECK(percentile_sorted({7.0}, 0.99) == 7);
}

TEST_CASE("outlier report") {
  std::vector<TheoremError> errs;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 30; ++i) {
    TheoremError e;
    e.q = 3 + rng() % 50;
    e.index = rng() % 10;
    e.abs_error = static_cast<double>(rng() % 7);
    errs.push_back(e);
  }
  CHECK(outlier_report(errs, 0).empty());
  const auto all = outlier_report(errs, 100);
  CHECK(all.size() == 30);
  for (std::size_t i = 1; i < all.size(); ++i) {
    CHECK(all[i - 1].abs_error >= all[i].abs_error);
    if (all[i - 1].abs_error == all[i].abs_error) CHECK(all[i - 1].q <= all[i].q);
  }
  CHECK(outlier_report(errs, 10).size() == 10);
}

TEST_CASE("outliers of a T2 sweep at Q = 10^3") {
  const auto rep = sweep_theorem2(1000, 2.0, full());
  CHECK(rep.outliers.size() == 10);
  for (std::size_t i = 1; i < rep.outliers.size(); ++i) CHECK(rep.outliers[i - 1].abs_error >= rep.outliers[i].abs_error);
  CHECK(report_json(rep)["outlier_budget"].get<double>() == doctest::Approx(1e6));
}

TEST_CASE("csv dump") {
  SweepConfig cfg;
  cfg.theorem = Theorem::T2;
  cfg.params = params(30, 3.5);
  cfg.csv_path = "harness_dump_test.csv";
  const auto rep = run_sweep(cfg);
  std::ifstream f(cfg.csv_path);
  std::string line;
  std::getline(f, line);
  CHECK(line == kCsvHeader);
  std::size_t rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == rep.included);
  std::remove(cfg.csv_path.c_str());
}

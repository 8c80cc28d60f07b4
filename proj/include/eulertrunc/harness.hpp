#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eulertrunc/characters.hpp"
#include "eulertrunc/primes.hpp"

namespace eulertrunc {

enum class Theorem { T1 = 1, T2, T3, T4, T5 };

const char* to_string(Theorem t) noexcept;
Theorem theorem_from_int(int n);

// User-facing parameters; unset optionals take the theorem's defaults.
struct TheoremParams {
  double Q = 0;
  double delta = 0;
  std::optional<double> A;
  std::optional<double> a;
  std::optional<double> y;
  std::optional<double> alpha;
  std::optional<double> f_Q;
};

// Parameters after window checks, in the form the evaluators consume.
struct SweepPlan {
  Theorem theorem = Theorem::T2;
  double Q = 0, delta = 0;
  double s = 1.0;        // evaluation point
  double y_low = 0.0;    // prime sum runs over y_low < p <= y_high
  double y_high = 0.0;
  double y_ratio = 0.0;  // truncated product range for ratio forms (0: none)
  double A = 0, a = 0;
  double f_Q = 0, threshold = 0;  // Theorem 5 only
  double tol_c = 1e-12;
};

inline constexpr double kMaxSweepPrime = 2e8;

// Throws ParameterWindowError when a hypothesis is unmet and
// ConfigurationError when the prime range exceeds kMaxSweepPrime.
SweepPlan plan_sweep(Theorem theorem, const TheoremParams& params);

nlohmann::ordered_json plan_json(const SweepPlan& plan);

struct TheoremError {
  std::string character_id;
  std::uint64_t q = 0, index = 0, conductor = 0, order = 0;
  Theorem theorem = Theorem::T2;
  SweepPlan params;
  std::complex<double> error;
  double abs_error = 0.0;
  std::optional<double> ratio_error;  // Theorem 4 product form
};

// Single-character reference path built from the per-character library calls.
TheoremError theorem_error(const DirichletCharacter& chi, const SweepPlan& plan, const PrimeTable& table);

double theorem1_ratio(const DirichletCharacter& chi, double Q, double delta, double A, const PrimeTable& table);
std::complex<double> theorem2_error(const DirichletCharacter& chi, double Q, double delta, const PrimeTable& table);
std::complex<double> theorem3_error(const DirichletCharacter& chi, double Q, double delta, double y, double alpha,
                                    const PrimeTable& table);

struct CharacterOutcome {
  std::uint64_t index = 0, order = 0;
  bool principal = false;
  bool branch_failed = false;
  std::complex<double> error;
  double abs_error = 0.0;
  std::optional<double> ratio_error;
};

// All primitive characters mod q at once (group Fourier transforms for every
// per-residue table), in ascending index order.
std::vector<CharacterOutcome> evaluate_modulus(std::uint64_t q, const SweepPlan& plan, bool real_only,
                                               const PrimeTable& table);

struct SamplePolicy {
  enum class Mode { automatic, full, stratified };
  Mode mode = Mode::automatic;
  std::uint64_t seed = 0;
  double fraction = 0.1;
  bool real_only = false;
};

inline constexpr std::uint64_t kFullSweepMaxQ = 2000;

// Moduli 1..Q to visit: all of them, or every prime plus a seeded fraction of composites.
std::vector<std::uint64_t> select_moduli(std::uint64_t Q, const SamplePolicy& policy);
bool is_stratified(std::uint64_t Q, const SamplePolicy& policy);

struct ErrorStats {
  double max = 0, mean = 0, median = 0, p90 = 0, p99 = 0;
};

// numpy-style linear interpolation percentile on sorted data, p in [0, 1]
double percentile_sorted(const std::vector<double>& sorted, double p);
ErrorStats summarize(std::vector<double> values, double compensated_mean);

struct Outlier {
  std::string id;
  std::uint64_t q = 0, index = 0, conductor = 0, order = 0;
  double abs_error = 0;
};

struct SweepConfig {
  Theorem theorem = Theorem::T2;
  TheoremParams params;
  SamplePolicy sample;
  int threads = 1;
  std::size_t top_k = 10;
  std::string csv_path;  // empty: no dump
  bool timing = false;
};

inline constexpr const char* kReportSchema = "eulertrunc.sweep/1";

struct SweepReport {
  Theorem theorem = Theorem::T2;
  SweepPlan plan;
  SamplePolicy sample;
  bool stratified = false;
  std::uint64_t moduli_visited = 0;
  std::uint64_t enumerated = 0, included = 0;
  std::uint64_t excluded_principal = 0, excluded_branch = 0;
  std::uint64_t nonfinite = 0;
  std::vector<std::string> branch_failures;
  ErrorStats stats;
  std::vector<Outlier> outliers;
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
  std::optional<double> wall_time;

  [[nodiscard]] std::uint64_t excluded() const noexcept { return excluded_principal + excluded_branch; }
};

nlohmann::ordered_json report_json(const SweepReport& r);

SweepReport run_sweep(const SweepConfig& config);

SweepReport sweep_theorem1(std::uint64_t Q, double delta, double A, const SamplePolicy& policy = {});
SweepReport sweep_theorem2(std::uint64_t Q, double delta, const SamplePolicy& policy = {});
SweepReport sweep_theorem3(std::uint64_t Q, double delta, double y, double alpha, const SamplePolicy& policy = {});
SweepReport sweep_theorem4(std::uint64_t Q, double delta, double a, const SamplePolicy& policy = {});
SweepReport sweep_theorem5(std::uint64_t Q, double delta, double a, double A, const SamplePolicy& policy = {});

// Top k by |error| (ties by q, then index), nonincreasing.
std::vector<TheoremError> outlier_report(std::vector<TheoremError> errors, std::size_t k);

inline constexpr const char* kCsvHeader = "q,index,conductor,order,err_re,err_im,abs_err";

}  // namespace eulertrunc

#include "eulertrunc/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "eulertrunc/errors.hpp"

namespace eulertrunc {

namespace {

// B_{2j} / (2j)! for j = 1..15
const std::array<double, 15>& bernoulli_over_factorial() {
  static const std::array<double, 15> c = [] {
    constexpr std::array<double, 15> b = {
        1.0 / 6,           -1.0 / 30,          1.0 / 42,
        -1.0 / 30,         5.0 / 66,           -691.0 / 2730,
        7.0 / 6,           -3617.0 / 510,      43867.0 / 798,
        -174611.0 / 330,   854513.0 / 138,     -236364091.0 / 2730,
        8553103.0 / 6,     -23749461029.0 / 870, 8615841276005.0 / 14322};
    std::array<double, 15> out{};
    double fact = 1.0;
    for (int j = 1; j <= 15; ++j) {
      fact *= (2.0 * j - 1) * (2.0 * j);
      out[j - 1] = b[j - 1] / fact;
    }
    return out;
  }();
  return c;
}

// x/(s-1) + 1/2 + sum_j c_j (s)_{2j-1} x^{-(2j-1)}: the Euler-Maclaurin remainder
// of sum_{k >= 0} (x + k)^{-s}, divided by x^{-s}.
double em_bracket(double s, double x) {
  const auto& c = bernoulli_over_factorial();
  double r = x / (s - 1.0) + 0.5;
  double rising = s / x;  // (s)_1 x^{-1}
  const double inv_x2 = 1.0 / (x * x);
  for (int j = 1; j <= 15; ++j) {
    const double t = c[j - 1] * rising;
    r += t;
    if (std::abs(t) < 1e-17 * std::abs(r)) break;
    rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j) * inv_x2;
  }
  return r;
}

int shift_for(double s) { return 10 + static_cast<int>(std::ceil(std::max(s, 0.0))); }

// sum_{k >= 0} (scale * (a + k))^{-s}
double hurwitz_scaled(double s, double a, double scale) {
  const int N = shift_for(s);
  double head = 0.0;
  for (int k = N - 1; k >= 0; --k) head += std::pow(scale * (a + k), -s);
  const double x = a + N;
  return head + std::pow(scale * x, -s) * em_bracket(s, x);
}

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

// log Gamma(z) for Re z >= 1/2
std::complex<double> lanczos_log_gamma(std::complex<double> z) {
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(pi z), some branch
std::complex<double> log_sin_pi(std::complex<double> z) {
  const double y = z.imag();
  if (std::abs(y) < 20.0) {
    const double r = z.real() - 2.0 * std::round(z.real() / 2.0);
    const double py = std::numbers::pi * y;
    const std::complex<double> s{std::sin(std::numbers::pi * r) * std::cosh(py),
                                 std::cos(std::numbers::pi * r) * std::sinh(py)};
    return std::log(s);
  }
  // sin(pi z) = e^{-i pi z} (1 - e^{2 pi i z}) / (-2i) for y > 0; mirror for y < 0
  const std::complex<double> i{0.0, 1.0};
  const double r = z.real() - 2.0 * std::round(z.real() / 2.0);
  const std::complex<double> zr{r, y};
  if (y > 0) {
    return -i * std::numbers::pi * zr - std::log(std::complex<double>{0.0, -2.0}) +
           std::log(1.0 - std::exp(2.0 * std::numbers::pi * i * zr));
  }
  return i * std::numbers::pi * zr - std::log(std::complex<double>{0.0, 2.0}) +
         std::log(1.0 - std::exp(-2.0 * std::numbers::pi * i * zr));
}

}  // namespace

double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // asymptotic tail: 1/12, 1/120, 1/252, 1/240, 1/132, 691/32760, 1/12
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
  return acc + std::log(x) - 0.5 / x - series;
}

std::vector<double> digamma_table(std::uint64_t q) {
  if (q == 0) throw DomainError("digamma_table: q must be >= 1");
  std::vector<double> t(q + 1);
  t[0] = std::numeric_limits<double>::quiet_NaN();
  const double dq = static_cast<double>(q);
  for (std::uint64_t a = 1; a <= q; ++a) {
    // psi(a/q) = psi(a/q + n) - sum_{k<n} q/(a + kq)
    double x = static_cast<double>(a) / dq;
    double acc = 0.0;
    std::uint64_t num = a;
    while (x < 10.0) {
      acc -= dq / static_cast<double>(num);
      num += q;
      x += 1.0;
    }
    const double r = 1.0 / (x * x);
    const double series =
        r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * (691.0 / 32760 - r / 12))))));
    t[a] = acc + std::log(x) - 0.5 / x - series;
  }
  return t;
}

double hurwitz_zeta(double s, double a) {
  if (s == 1.0) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: a must be positive");
  if (!(s > 0.0)) throw DomainError("hurwitz_zeta: s must be positive");
  return hurwitz_scaled(s, a, 1.0);
}

double hurwitz_residue_sum(double s, std::uint64_t a, std::uint64_t q) {
  if (s == 1.0) throw PoleError("hurwitz_residue_sum: pole at s = 1");
  if (a == 0 || a > q) throw DomainError("hurwitz_residue_sum: need 1 <= a <= q");
  const double dq = static_cast<double>(q);
  const int N = shift_for(s);
  double head = 0.0;
  for (int k = N - 1; k >= 0; --k) head += std::pow(static_cast<double>(a) + k * dq, -s);
  const double X = static_cast<double>(a) + N * dq;
  return head + std::pow(X, -s) * em_bracket(s, X / dq);
}

std::complex<double> log_gamma(std::complex<double> z) {
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real()))
    throw DomainError("complex_gamma: pole at a nonpositive integer");
  if (z.real() >= 0.5) return lanczos_log_gamma(z);
  return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
}

std::complex<double> complex_gamma(std::complex<double> z) { return std::exp(log_gamma(z)); }

}  // namespace eulertrunc

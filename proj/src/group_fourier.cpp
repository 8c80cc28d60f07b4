#include "eulertrunc/group_fourier.hpp"

#include <fftw3.h>

#include <mutex>

#include "eulertrunc/errors.hpp"

namespace eulertrunc {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

CharacterFourier::CharacterFourier(std::shared_ptr<const CharacterGroup> group)
    : group_(std::move(group)), n_(group_->phi()) {
  const std::uint64_t q = group_->modulus();
  const std::size_t r = group_->rank();
  slot_.assign(q, -1);
  std::vector<std::uint64_t> logs(r);
  const auto strides = group_->strides();
  for (std::uint64_t a = 0; a < q; ++a) {
    if (!group_->discrete_logs(static_cast<std::int64_t>(a), logs)) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < r; ++i) s += static_cast<std::int64_t>(logs[i] * strides[i]);
    slot_[a] = s;
  }

  in_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n_));
  out_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * n_));
  if (!in_ || !out_) throw Error("CharacterFourier: allocation failed");
  if (r == 0) return;

  std::vector<int> dims(r);
  for (std::size_t i = 0; i < r; ++i) dims[i] = static_cast<int>(group_->components()[i].order);
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_ = fftw_plan_dft(static_cast<int>(r), dims.data(), reinterpret_cast<fftw_complex*>(in_),
                        reinterpret_cast<fftw_complex*>(out_), FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plan_) throw Error("CharacterFourier: FFTW planning failed");
}

CharacterFourier::~CharacterFourier() {
  if (plan_) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  }
  fftw_free(in_);
  fftw_free(out_);
}

std::vector<std::complex<double>> CharacterFourier::run() {
  if (!plan_) return {in_[0]};
  fftw_execute(static_cast<fftw_plan>(plan_));
  return {out_, out_ + n_};
}

std::vector<std::complex<double>> CharacterFourier::transform(std::span<const double> f) {
  std::fill(in_, in_ + n_, std::complex<double>{});
  for (std::size_t a = 0; a < slot_.size(); ++a)
    if (slot_[a] >= 0) in_[slot_[a]] = f[a];
  return run();
}

std::vector<std::complex<double>> CharacterFourier::transform(std::span<const std::complex<double>> f) {
  std::fill(in_, in_ + n_, std::complex<double>{});
  for (std::size_t a = 0; a < slot_.size(); ++a)
    if (slot_[a] >= 0) in_[slot_[a]] = f[a];
  return run();
}

std::uint64_t CharacterFourier::power_index(std::uint64_t index, std::int64_t n) const {
  const auto comps = group_->components();
  const auto strides = group_->strides();
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::uint64_t o = comps[i].order;
    const std::uint64_t e = index / strides[i];
    index %= strides[i];
    std::int64_t nn = n % static_cast<std::int64_t>(o);
    if (nn < 0) nn += static_cast<std::int64_t>(o);
    out += static_cast<std::uint64_t>(static_cast<unsigned __int128>(e) * static_cast<std::uint64_t>(nn) % o) * strides[i];
  }
  return out;
}

}  // namespace eulertrunc

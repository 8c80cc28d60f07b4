#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "eulertrunc/characters.hpp"

namespace eulertrunc {

// Evaluates sum_a chi(a) f(a) for every character chi mod q at once, as a
// multidimensional DFT over the component orders. Output slot i belongs to
// DirichletCharacter::from_index(group, i).
//
// Not thread-safe: each instance owns its FFTW buffers. Use one per worker.
class CharacterFourier {
 public:
  explicit CharacterFourier(std::shared_ptr<const CharacterGroup> group);
  ~CharacterFourier();
  CharacterFourier(const CharacterFourier&) = delete;
  CharacterFourier& operator=(const CharacterFourier&) = delete;

  [[nodiscard]] const std::shared_ptr<const CharacterGroup>& group() const noexcept { return group_; }
  [[nodiscard]] std::size_t size() const noexcept { return n_; }

  // f is indexed by residue a in [0, q); values at non-units are ignored.
  std::vector<std::complex<double>> transform(std::span<const double> f);
  std::vector<std::complex<double>> transform(std::span<const std::complex<double>> f);

  // Linear log index of a unit residue (the slot its mass lands in), or -1.
  [[nodiscard]] std::int64_t slot(std::uint64_t residue) const { return slot_[residue]; }

  // Index of chi^n given the index of chi.
  [[nodiscard]] std::uint64_t power_index(std::uint64_t index, std::int64_t n) const;

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::size_t n_;
  std::vector<std::int64_t> slot_;
  std::complex<double>* in_ = nullptr;
  std::complex<double>* out_ = nullptr;
  void* plan_ = nullptr;

  std::vector<std::complex<double>> run();
};

}  // namespace eulertrunc

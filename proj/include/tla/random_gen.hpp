#pragma once

#include <cstdint>
#include <random>

#include "tla/form.hpp"
#include "tla/section.hpp"

namespace tla {

// Deterministic random source: the standard-specified mt19937_64 stream plus
// hand-rolled range reduction. <random> distribution templates are
// implementation-defined and would break byte-identical reports across
// platforms, so everything derived from the raw stream lives here.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next();
  // Uniform in [0, bound); bound >= 1. Rejection sampling, no modulo bias.
  uint64_t below(uint64_t bound);
  // Uniform integer in [lo, hi], inclusive.
  int64_t range(int64_t lo, int64_t hi);
  // True with probability num / den.
  bool chance(uint64_t num, uint64_t den);

  // Numerator in [-bound, bound], denominator in [1, 3].
  Rat rat(int64_t bound);
  // Real part always drawn; imaginary part nonzero one time in three.
  Scalar scalar(int64_t bound);
  Scalar nonzero_scalar(int64_t bound);

  // Up to max_terms monomials in x_0..x_{num_x-1}, each of total degree
  // <= max_deg; terms may collapse, so the result can have fewer or be zero.
  PolyFn poly(size_t num_x, int64_t max_deg, size_t max_terms);
  PolyFn nonzero_poly(size_t num_x, int64_t max_deg, size_t max_terms);

  // Homogeneous form of the given total degree in the generator coframe;
  // each component slot is filled with probability 1/2.
  TlaForm form(size_t m, size_t n, ValueKind kind, size_t degree);

  TlaSection section(size_t m, size_t n);

 private:
  std::mt19937_64 eng_;
};

}  // namespace tla

#include "tla/random_gen.hpp"

#include <bit>
#include <limits>
#include <stdexcept>

namespace tla {

uint64_t Rng::next() { return eng_(); }

uint64_t Rng::below(uint64_t bound) {
  if (bound == 0) throw std::domain_error("Rng::below: zero bound");
  constexpr uint64_t top = std::numeric_limits<uint64_t>::max();
  uint64_t rem = (top % bound + 1) % bound;  // 2^64 mod bound
  uint64_t v = eng_();
  while (rem != 0 && v > top - rem) v = eng_();
  return v % bound;
}

int64_t Rng::range(int64_t lo, int64_t hi) {
  uint64_t span = static_cast<uint64_t>(hi) - static_cast<uint64_t>(lo) + 1;
  return static_cast<int64_t>(static_cast<uint64_t>(lo) + below(span));
}

bool Rng::chance(uint64_t num, uint64_t den) { return below(den) < num; }

Rat Rng::rat(int64_t bound) {
  long num = static_cast<long>(range(-bound, bound));
  long den = static_cast<long>(range(1, 3));
  return Rat(num, den);
}

Scalar Rng::scalar(int64_t bound) {
  Rat re = rat(bound);
  Rat im = chance(1, 3) ? rat(bound) : Rat(0);
  return Scalar(re, im);
}

Scalar Rng::nonzero_scalar(int64_t bound) {
  for (;;) {
    Scalar s = scalar(bound);
    if (!s.is_zero()) return s;
  }
}

PolyFn Rng::poly(size_t num_x, int64_t max_deg, size_t max_terms) {
  PolyFn sum;
  size_t terms = below(max_terms + 1);
  for (size_t t = 0; t < terms; ++t) {
    PolyFn term(scalar(3));
    int64_t budget = max_deg;
    for (size_t v = 0; v < num_x; ++v) {
      int64_t e = range(0, budget);
      budget -= e;
      if (e > 0) term = term * PolyFn::x(v, static_cast<int32_t>(e));
    }
    sum += term;
  }
  return sum;
}

PolyFn Rng::nonzero_poly(size_t num_x, int64_t max_deg, size_t max_terms) {
  for (;;) {
    PolyFn p = poly(num_x, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

TlaForm Rng::form(size_t m, size_t n, ValueKind kind, size_t degree) {
  TlaForm f(m, n, kind, InnerBasis::kTheta);
  size_t vs = kind == ValueKind::kScalar ? 1 : n;
  for (uint32_t dx = 0; dx < (1u << m); ++dx) {
    for (uint32_t th = 0; th < (1u << n); ++th) {
      if (static_cast<size_t>(std::popcount(dx) + std::popcount(th)) !=
          degree)
        continue;
      std::vector<PolyFn> v(vs);
      bool any = false;
      for (size_t k = 0; k < vs; ++k) {
        if (!chance(1, 2)) continue;
        v[k] = poly(m, 2, 2);
        any = any || !v[k].is_zero();
      }
      if (any) f.add({dx, th}, v);
    }
  }
  return f;
}

TlaSection Rng::section(size_t m, size_t n) {
  TlaSection s;
  for (size_t mu = 0; mu < m; ++mu) s.X.push_back(poly(m, 2, 2));
  for (size_t a = 0; a < n; ++a) s.gamma.push_back(poly(m, 2, 2));
  return s;
}

}  // namespace tla

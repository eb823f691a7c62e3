#include "tla/section.hpp"

namespace tla {

namespace {

// Directional derivative sum_mu X^mu d(f)/dx_mu.
PolyFn lie_derivative(const std::vector<PolyFn>& X, const PolyFn& f) {
  PolyFn r;
  for (size_t mu = 0; mu < X.size(); ++mu)
    r += X[mu] * f.derivative_x(mu);
  return r;
}

}  // namespace

TlaSection tla_bracket(const LieAlgebra& L, const TlaSection& s1,
                       const TlaSection& s2) {
  size_t m = s1.X.size();
  TlaSection out;
  out.X.resize(m);
  for (size_t mu = 0; mu < m; ++mu)
    out.X[mu] = lie_derivative(s1.X, s2.X[mu]) - lie_derivative(s2.X, s1.X[mu]);
  out.gamma = L.bracket(s1.gamma, s2.gamma);
  for (size_t a = 0; a < out.gamma.size(); ++a)
    out.gamma[a] += lie_derivative(s1.X, s2.gamma[a]) -
                    lie_derivative(s2.X, s1.gamma[a]);
  return out;
}

}  // namespace tla

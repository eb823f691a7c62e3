#pragma once

#include <vector>

#include "tla/lie_algebra.hpp"
#include "tla/poly.hpp"

namespace tla {

// Local section X + gamma: a vector field X = X^mu d/dx_mu on the chart plus
// an inner part gamma = gamma^a E_a with function coefficients.
struct TlaSection {
  std::vector<PolyFn> X;      // size m
  std::vector<PolyFn> gamma;  // size n
};

// [X+gamma, Y+eta] = [X,Y] + (X.eta - Y.gamma + [gamma,eta]); the vector
// fields act on inner coefficients through the anchor (coordinate
// derivatives), and [X,Y] is the usual commutator of vector fields.
TlaSection tla_bracket(const LieAlgebra& L, const TlaSection& s1,
                       const TlaSection& s2);

}  // namespace tla

#pragma once

#include "dfo/basis.hpp"

namespace dfo {

// min_s  g's + 1/2 s'Hs  subject to  ||s||_2 <= delta
struct TrsProblem {
  Vector g;
  Matrix H;  // symmetric within 1e-12
  double delta = 1.0;
};

struct TrsSolution {
  Vector s;
  double lambda = 0.0;      // multiplier of the ball constraint, >= 0
  double model_value = 0.0; // g's + 1/2 s'Hs at the solution
  bool hard_case = false;
  int iterations = 0;
};

// More-Sorensen style solve via the spectral decomposition of H: safeguarded
// Newton on 1/||s(lambda)|| - 1/delta = 0, boundary tolerance
// | ||s|| - delta | <= 1e-6 delta, at most 100 iterations; the hard case is
// handled by an eigenstep along the leading eigenspace.
TrsSolution solve_trs(const TrsProblem& p);

}  // namespace dfo

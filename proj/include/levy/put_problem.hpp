#pragma once

#include "levy/model.hpp"

namespace levy {

/// Perpetual American put on e^{X}: sup_tau E_x[e^{-r tau} (K - e^{X_tau})^+].
struct PutProblem {
  double strike;
  double rate;
  LevyModel model;
};

/// K > 0 and r >= 0 (ValidationError); r = 0 additionally needs
/// E[X_1] > 0, otherwise stopping in finite time is never optimal and
/// UnsupportedError is raised.
void validate(const PutProblem& p);

}  // namespace levy

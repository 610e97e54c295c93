#pragma once

// Named reference models covering every regime the library distinguishes:
// Gaussian part with and without drift, bounded variation with either
// drift sign, two-sided phase-type jumps, and a subordinator.

#include <string>
#include <vector>

#include "levy/model.hpp"
#include "levy/montecarlo.hpp"

namespace levy {

struct FleetEntry {
  std::string name;
  LevyModel model;
  double strike;
  double rate;
};

std::vector<FleetEntry> reference_fleet();

/// Throws ValidationError("model", ...) for an unknown name.
FleetEntry fleet_entry(const std::string& name);

struct FleetCheck {
  std::string model;
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Invariant checks on every fleet model: factorisation residual, mass of
/// the infimum law, atom/regularity agreement, agreement of the two value
/// function paths, the Fourier identity and a Kolmogorov-Smirnov test of
/// the infimum law against simulation.
std::vector<FleetCheck> verify_fleet(const SimConfig& cfg);

}  // namespace levy

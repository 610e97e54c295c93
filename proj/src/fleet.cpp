#include "levy/fleet.hpp"

#include <cmath>

#include "levy/american.hpp"
#include "levy/errors.hpp"
#include "levy/wiener_hopf.hpp"

namespace levy {

std::vector<FleetEntry> reference_fleet() {
  std::vector<FleetEntry> f;
  f.push_back({"brownian", LevyModel(2.0, 0.0), 2.0, 1.0});
  f.push_back({"brownian_drift", LevyModel(1.0, 0.2), 2.0, 0.5});
  f.push_back({"sn_bv_up_drift",
               LevyModel(0.0, 1.0, std::nullopt, JumpComponent{1.0, PhaseType::exponential(1.0)}),
               2.0, 2.0});
  f.push_back({"sn_bv_down_drift",
               LevyModel(0.0, -0.5, std::nullopt, JumpComponent{1.0, PhaseType::exponential(2.0)}),
               2.0, 1.0});
  f.push_back({"two_sided_pt",
               LevyModel(0.5, 0.1, JumpComponent{1.0, PhaseType::exponential(3.0)},
                         JumpComponent{2.0, PhaseType::erlang(2, 4.0)}),
               2.0, 1.0});
  f.push_back({"subordinator",
               LevyModel(0.0, 0.25, JumpComponent{1.0, PhaseType::exponential(2.0)}), 2.0, 1.0});
  return f;
}

FleetEntry fleet_entry(const std::string& name) {
  for (auto& e : reference_fleet())
    if (e.name == name) return e;
  throw ValidationError("model", "unknown fleet model '" + name + "'");
}

std::vector<FleetCheck> verify_fleet(const SimConfig& cfg) {
  std::vector<FleetCheck> out;
  auto add = [&](const std::string& m, const std::string& c, double v, double tol) {
    out.push_back({m, c, v, tol, v <= tol});
  };
  for (const auto& e : reference_fleet()) {
    const PutProblem p{e.strike, e.rate, e.model};
    const PutSolution s = optimal_threshold(p);

    double wh = 0.0;
    for (double theta : {0.3, 1.0, 2.5, 7.0})
      wh = std::max(wh, wh_factorization_check(e.model, e.rate, theta));
    add(e.name, "wiener_hopf_residual", wh, 1e-8);
    add(e.name, "inf_law_mass", std::abs(s.inf_law.total_mass() - 1.0), 1e-10);

    const bool regular = classify_regularity(e.model).regular_downward == Regularity::regular;
    const bool no_atom = s.atom0 == 0.0;
    add(e.name, "atom_matches_regularity", regular == no_atom ? 0.0 : 1.0, 0.0);

    double paths = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double x = s.x_star - 1.0 + 0.15 * i;
      paths = std::max(paths, std::abs(value_function(s, p, x) - value_function_passage(s, p, x)));
    }
    add(e.name, "value_paths_agree", paths, 1e-8);
    add(e.name, "fourier_residual", std::abs(fourier_check(s, p, 1.0)), 1e-6);

    const auto samples = sample_inf_and_endpoint(e.model, e.rate, cfg);
    std::vector<double> depth;
    depth.reserve(samples.size());
    for (const auto& smp : samples) depth.push_back(-smp.infimum);
    const double ks = ks_statistic(depth, [&](double y) { return s.inf_law.cdf(y); });
    add(e.name, "ks_inf_law", ks, 1.63 / std::sqrt(static_cast<double>(depth.size())));
  }
  return out;
}

}  // namespace levy

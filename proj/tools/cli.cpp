#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "levy/american.hpp"
#include "levy/errors.hpp"
#include "levy/fleet.hpp"
#include "levy/io.hpp"
#include "levy/passage.hpp"
#include "levy/wiener_hopf.hpp"

namespace levy::cli {

namespace {

using nlohmann::json;

const std::vector<std::string> kCommands = {"price",          "threshold", "diagnose", "factors",
                                            "identity-check", "simulate",  "verify"};

const char* kUsageText =
    "usage: levy <command> [options]\n"
    "commands:\n"
    "  price           value function on a grid (CSV x,value,payoff)\n"
    "  threshold       optimal exercise level and pasting type (JSON)\n"
    "  diagnose        regularity of 0 and, with --rate, the atom at zero (JSON)\n"
    "  factors         Wiener-Hopf roots/poles or the infimum mixture (CSV)\n"
    "  identity-check  factorisation residual and first-passage identity (CSV)\n"
    "  simulate        Monte Carlo summary per shard (CSV)\n"
    "  verify          invariant checks on the reference fleet (CSV)\n"
    "common options: --model <path|fleet:name> --strike <K> --rate <r> --grid lo:hi:n\n"
    "                --seed <u64> --paths <n> --shards <n> --out <path>\n";

struct Options {
  std::string model;
  std::optional<double> strike;
  std::optional<double> rate;
  std::string grid;
  std::uint64_t seed = SimConfig{}.seed;
  std::size_t paths = SimConfig{}.n_paths;
  unsigned shards = SimConfig{}.shards;
  std::string out;
  double beta = 0.0;
  double level = 0.0;
  bool mixture = false;
};

struct Grid {
  double lo, hi;
  int n;
  std::vector<double> points() const {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
    return xs;
  }
};

Grid parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ValidationError("grid", "expected lo:hi:n");
  Grid g{};
  try {
    std::size_t used = 0;
    g.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument("lo");
    g.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("hi");
    g.n = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("n");
  } catch (const std::logic_error&) {
    throw ValidationError("grid", "expected numbers in lo:hi:n");
  }
  if (!(g.lo < g.hi)) throw ValidationError("grid", "lo must be < hi");
  if (g.n < 2) throw ValidationError("grid", "n must be >= 2");
  return g;
}

struct Loaded {
  LevyModel model;
  std::optional<FleetEntry> fleet;
};

Loaded load(const Options& o) {
  if (o.model.empty()) throw ValidationError("model", "--model is required");
  const std::string prefix = "fleet:";
  if (o.model.rfind(prefix, 0) == 0) {
    FleetEntry e = fleet_entry(o.model.substr(prefix.size()));
    return {e.model, e};
  }
  return {load_model(o.model), std::nullopt};
}

double need(const std::optional<double>& v, const std::optional<FleetEntry>& f,
            double FleetEntry::*member, const char* field) {
  if (v) return *v;
  if (f) return (*f).*member;
  throw ValidationError(field, std::string("--") + field + " is required");
}

SimConfig sim_config(const Options& o) {
  SimConfig c;
  c.seed = o.seed;
  c.n_paths = o.paths;
  c.shards = o.shards;
  validate(c);
  return c;
}

void emit_error(std::ostream& err, const char* kind, const std::string& message,
                const std::string& field = {}) {
  json j{{"error", kind}, {"message", message}};
  if (!field.empty()) j["field"] = field;
  err << j.dump() << '\n';
}

int cmd_price(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  const PutProblem p{need(o.strike, m.fleet, &FleetEntry::strike, "strike"),
                     need(o.rate, m.fleet, &FleetEntry::rate, "rate"), m.model};
  const PutSolution s = optimal_threshold(p);
  const Grid g = o.grid.empty() ? Grid{s.x_star - 1.0, s.x_star + 3.0, 81} : parse_grid(o.grid);
  out << "x,value,payoff\n";
  for (double x : g.points())
    out << format_double(x) << ',' << format_double(value_function(s, p, x)) << ','
        << format_double(std::max(p.strike - std::exp(x), 0.0)) << '\n';
  return kOk;
}

int cmd_threshold(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  const PutProblem p{need(o.strike, m.fleet, &FleetEntry::strike, "strike"),
                     need(o.rate, m.fleet, &FleetEntry::rate, "rate"), m.model};
  const PutSolution s = optimal_threshold(p);
  out << to_json(s).dump(2) << '\n';
  return kOk;
}

int cmd_diagnose(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  json j = to_json(classify_regularity(m.model));
  j["spectrally_negative"] = m.model.spectrally_negative() && !m.model.negative_subordinator();
  j["subordinator"] = m.model.subordinator();
  j["mean"] = m.model.mean();
  const std::optional<double> r = o.rate ? o.rate : (m.fleet ? std::optional(m.fleet->rate) : std::nullopt);
  if (r) {
    const ExpMixture mix = inf_law(m.model, *r);
    j["rate"] = *r;
    j["atom0"] = mix.atom0;
    j["pasting"] = to_string(mix.atom0 == 0.0 ? Pasting::smooth : Pasting::continuous);
  }
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_factors(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  const double r = need(o.rate, m.fleet, &FleetEntry::rate, "rate");
  if (o.mixture)
    write_mixture_csv(out, inf_law(m.model, r));
  else
    write_root_set_csv(out, phase_type_roots(m.model, r));
  return kOk;
}

int cmd_identity(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  const double alpha = need(o.rate, m.fleet, &FleetEntry::rate, "rate");
  if (!(alpha > 0.0)) throw ValidationError("rate", "identity-check needs alpha > 0");
  const PassageQuery q{alpha, o.beta, o.level};
  validate(q);
  double wh = 0.0;
  for (double th : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0})
    wh = std::max(wh, wh_factorization_check(m.model, alpha, th));
  const FluctuationCheck fc = fluctuation_identity_check(m.model, q, sim_config(o));
  const bool ok = wh < 1e-8 && fc.z_score < 3.0;
  out << "alpha,beta,x,analytic,lhs_mc,lhs_se,rhs_mc,rhs_se,z_score,wh_residual,passed\n";
  out << format_double(alpha) << ',' << format_double(q.beta) << ',' << format_double(q.level)
      << ',' << format_double(up_passage_transform(m.model, q)) << ','
      << format_double(fc.lhs.mean) << ',' << format_double(fc.lhs.std_error) << ','
      << format_double(fc.rhs.mean) << ',' << format_double(fc.rhs.std_error) << ','
      << format_double(fc.z_score) << ',' << format_double(wh) << ',' << (ok ? "true" : "false")
      << '\n';
  return ok ? kOk : kCheckFailed;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const Loaded m = load(o);
  const double r = need(o.rate, m.fleet, &FleetEntry::rate, "rate");
  const auto est = simulate_summary(m.model, r, sim_config(o));
  const char* names[] = {"neg_infimum_mean", "infimum_zero_probability", "endpoint_mean"};
  out << "quantity,shard,mean,std_error,n\n";
  for (std::size_t k = 0; k < est.size(); ++k) {
    for (std::size_t s = 0; s < est[k].shards.size(); ++s) {
      const Estimate& e = est[k].shards[s];
      out << names[k] << ',' << s << ',' << format_double(e.mean) << ','
          << format_double(e.std_error) << ',' << e.n << '\n';
    }
    const Estimate& e = est[k].merged;
    out << names[k] << ",merged," << format_double(e.mean) << ',' << format_double(e.std_error)
        << ',' << e.n << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto checks = verify_fleet(sim_config(o));
  out << "model,check,value,tolerance,passed\n";
  bool ok = true;
  for (const auto& c : checks) {
    out << c.model << ',' << c.check << ',' << format_double(c.value) << ','
        << format_double(c.tolerance) << ',' << (c.passed ? "true" : "false") << '\n';
    ok = ok && c.passed;
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || std::find(kCommands.begin(), kCommands.end(), args[0]) == kCommands.end()) {
    if (!args.empty() && (args[0] == "--help" || args[0] == "-h")) {
      out << kUsageText;
      return kOk;
    }
    err << kUsageText;
    return kUsage;
  }
  const std::string command = args[0];

  CLI::App app{"levy " + command};
  Options o;
  app.add_option("--model", o.model, "model JSON file or fleet:<name>");
  app.add_option("--strike", o.strike, "strike K");
  app.add_option("--rate", o.rate, "discount / killing rate");
  app.add_option("--grid", o.grid, "lo:hi:n");
  app.add_option("--seed", o.seed, "base seed");
  app.add_option("--paths", o.paths, "Monte Carlo paths");
  app.add_option("--shards", o.shards, "independent shards");
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--beta", o.beta, "transform variable beta (identity-check)");
  app.add_option("--level", o.level, "passage level x (identity-check)");
  app.add_flag("--mixture", o.mixture, "factors: emit the infimum mixture instead of roots");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);  // CLI11 wants reverse order
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << kUsageText;
    return kUsage;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      emit_error(err, "validation", "cannot open output file", "out");
      return kValidation;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;
  sink.precision(17);

  try {
    if (command == "price") return cmd_price(o, sink);
    if (command == "threshold") return cmd_threshold(o, sink);
    if (command == "diagnose") return cmd_diagnose(o, sink);
    if (command == "factors") return cmd_factors(o, sink);
    if (command == "identity-check") return cmd_identity(o, sink);
    if (command == "simulate") return cmd_simulate(o, sink);
    return cmd_verify(o, sink);
  } catch (const ValidationError& e) {
    emit_error(err, "validation", e.message(), e.field());
    return kValidation;
  } catch (const ModelClassError& e) {
    emit_error(err, "model_class", e.what());
    return kValidation;
  } catch (const UnsupportedError& e) {
    emit_error(err, "unsupported", e.what());
    return kValidation;
  } catch (const PoleError& e) {
    emit_error(err, "pole", e.what());
    return kStructure;
  } catch (const StructureError& e) {
    emit_error(err, "structure", e.what());
    return kStructure;
  }
}

}  // namespace levy::cli

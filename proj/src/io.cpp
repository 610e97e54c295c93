#include "levy/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "levy/errors.hpp"

namespace levy {

namespace {

using nlohmann::json;

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ValidationError(path, "must be finite");
  return v;
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ValidationError(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::optional<JumpComponent> read_component(const json& root, const std::string& name) {
  const auto it = root.find(name);
  if (it == root.end() || it->is_null()) return std::nullopt;
  const json& c = *it;
  const double rate = read_number(member(c, "rate", name), name + ".rate");
  const std::string pp = name + ".phases";
  const json& ph = member(c, "phases", name);
  const json& a = member(ph, "a", pp);
  const json& T = member(ph, "T", pp);
  if (!a.is_array() || a.empty()) throw ValidationError(pp + ".a", "expected a nonempty array");
  const auto m = static_cast<Eigen::Index>(a.size());
  if (!T.is_array() || static_cast<Eigen::Index>(T.size()) != m)
    throw ValidationError(pp + ".T", "expected an array of " + std::to_string(m) + " rows");
  Eigen::VectorXd av(m);
  Eigen::MatrixXd Tm(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    av(i) = read_number(a[i], pp + ".a[" + std::to_string(i) + "]");
    const std::string row = pp + ".T[" + std::to_string(i) + "]";
    if (!T[i].is_array() || static_cast<Eigen::Index>(T[i].size()) != m)
      throw ValidationError(row, "expected " + std::to_string(m) + " entries");
    for (Eigen::Index k = 0; k < m; ++k)
      Tm(i, k) = read_number(T[i][k], row + "[" + std::to_string(k) + "]");
  }
  try {
    return JumpComponent{rate, PhaseType(av, Tm)};
  } catch (const ValidationError& e) {
    e.rethrow_under(pp);
  }
}

json component_to_json(const std::optional<JumpComponent>& c) {
  if (!c) return nullptr;
  const auto& a = c->law.initial();
  const auto& T = c->law.subintensity();
  json ja = json::array(), jT = json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    ja.push_back(a(i));
    json row = json::array();
    for (Eigen::Index k = 0; k < T.cols(); ++k) row.push_back(T(i, k));
    jT.push_back(row);
  }
  return {{"rate", c->rate}, {"phases", {{"a", ja}, {"T", jT}}}};
}

}  // namespace

LevyModel model_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("", "model must be a JSON object");
  const double g = read_number(member(j, "gaussian", ""), "gaussian");
  const double d = read_number(member(j, "drift", ""), "drift");
  auto up = read_component(j, "up");
  auto down = read_component(j, "down");
  return LevyModel(g, d, std::move(up), std::move(down));
}

json model_to_json(const LevyModel& m) {
  return {{"gaussian", m.gaussian()},
          {"drift", m.drift()},
          {"up", component_to_json(m.up())},
          {"down", component_to_json(m.down())}};
}

LevyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("", "cannot open model file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("", std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(j);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_root_set_csv(std::ostream& os, const RootSet& rs) {
  os << "kind,re,im,multiplicity\n";
  for (const auto& r : rs.roots)
    os << "root," << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
       << r.multiplicity << '\n';
  for (const auto& p : rs.poles)
    os << "pole," << format_double(p.value.real()) << ',' << format_double(p.value.imag()) << ','
       << p.multiplicity << '\n';
}

void write_mixture_csv(std::ostream& os, const ExpMixture& mix) {
  os << "atom0," << format_double(mix.atom0) << '\n';
  os << "re_rho,im_rho,k,re_A,im_A\n";
  for (const auto& t : mix.terms)
    os << format_double(t.rho.real()) << ',' << format_double(t.rho.imag()) << ',' << t.k << ','
       << format_double(t.A.real()) << ',' << format_double(t.A.imag()) << '\n';
}

void write_value_csv(std::ostream& os, const std::vector<double>& xs,
                     const std::vector<double>& values) {
  os << "x,value\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << format_double(xs[i]) << ',' << format_double(values[i]) << '\n';
}

json to_json(const PutSolution& s) {
  return {{"x_star", s.x_star},
          {"discount_factor", s.discount_factor},
          {"atom0", s.atom0},
          {"pasting", to_string(s.pasting)},
          {"right_derivative", s.right_derivative},
          {"left_derivative", -std::exp(s.x_star)}};
}

json to_json(const RegularityReport& r) {
  return {{"bounded_variation", r.bounded_variation},
          {"drift_sign", to_string(r.drift_sign)},
          {"regular_downward", to_string(r.regular_downward)},
          {"clause", to_string(r.clause)},
          {"diagnostic", r.diagnostic}};
}

}  // namespace levy

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "levy/errors.hpp"
#include "levy/io.hpp"

using namespace levy;
using nlohmann::json;

namespace {

std::string field_of(const json& j) {
  try {
    model_from_json(j);
  } catch (const ValidationError& e) {
    return e.field();
  }
  return "<none>";
}

json two_sided_json() {
  return json::parse(R"({"gaussian": 0.5, "drift": 0.1,
    "up": {"rate": 1.0, "phases": {"a": [1.0], "T": [[-3.0]]}},
    "down": {"rate": 2.0, "phases": {"a": [1.0, 0.0], "T": [[-4.0, 4.0], [0.0, -4.0]]}}})");
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("model JSON round trip") {
  const LevyModel m = model_from_json(two_sided_json());
  CHECK(m.gaussian() == 0.5);
  CHECK(m.drift() == 0.1);
  REQUIRE(m.down());
  CHECK(m.down()->rate == 2.0);
  const LevyModel back = model_from_json(model_to_json(m));
  CHECK(model_to_json(back) == model_to_json(m));
  CHECK(back.cumulant(cplx(0.3, 0.2)) == m.cumulant(cplx(0.3, 0.2)));
  CHECK(model_to_json(LevyModel(2.0, 0.0))["up"].is_null());
}

TEST_CASE("validation errors carry the JSON path") {
  json j = two_sided_json();
  j["down"]["phases"]["T"][0][0] = 1.0;
  CHECK(field_of(j) == "down.phases.T[0][0]");
  j = two_sided_json();
  j["up"]["rate"] = -1.0;
  CHECK(field_of(j) == "up.rate");
  j = two_sided_json();
  j["down"]["phases"]["a"][0] = "x";
  CHECK(field_of(j) == "down.phases.a[0]");
  j = two_sided_json();
  j.erase("drift");
  CHECK(field_of(j) == "drift");
  j = two_sided_json();
  j["down"]["phases"]["T"] = json::array({json::array({-4.0, 4.0})});
  CHECK(field_of(j) == "down.phases.T");
  j = two_sided_json();
  j["gaussian"] = -0.5;
  CHECK(field_of(j) == "gaussian");
  CHECK(field_of(json::array()) == "");
}

TEST_CASE("loading from disk") {
  const std::string path = "io_test_model.json";
  {
    std::ofstream f(path);
    f << two_sided_json().dump();
  }
  CHECK(load_model(path).up()->rate == 1.0);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK_THROWS_AS(load_model(path), ValidationError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_model("does/not/exist.json"), ValidationError);
}

TEST_CASE("doubles survive a text round trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 0.7320508075688773, 1e22}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV layouts") {
  const LevyModel m = model_from_json(two_sided_json());
  std::ostringstream roots;
  write_root_set_csv(roots, phase_type_roots(m, 1.0));
  auto l = lines(roots.str());
  CHECK(l.front() == "kind,re,im,multiplicity");
  int n_root = 0, n_pole = 0;
  for (std::size_t i = 1; i < l.size(); ++i) {
    if (l[i].rfind("root,", 0) == 0) ++n_root;
    if (l[i].rfind("pole,", 0) == 0) ++n_pole;
  }
  // Erlang(2) down jumps plus a Gaussian part: one pole of multiplicity 2,
  // three roots.
  CHECK(n_pole == 1);
  CHECK(n_root == 3);

  std::ostringstream mix;
  write_mixture_csv(mix, inf_law(m, 1.0));
  l = lines(mix.str());
  CHECK(l[0] == "atom0,0");
  CHECK(l[1] == "re_rho,im_rho,k,re_A,im_A");
  CHECK(l.size() == 5);

  std::ostringstream vals;
  write_value_csv(vals, {0.0, 1.0}, {2.0, 0.25});
  CHECK(vals.str() == "x,value\n0,2\n1,0.25\n");
}

TEST_CASE("solution JSON fields") {
  const PutProblem p{2.0, 1.0, LevyModel(2.0, 0.0)};
  const json j = to_json(optimal_threshold(p));
  CHECK(j["pasting"] == "Smooth");
  CHECK(std::abs(j["x_star"].get<double>()) < 1e-14);
  CHECK(j.contains("atom0"));
  const json r = to_json(classify_regularity(p.model));
  CHECK(r["bounded_variation"] == false);
}

#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "maxcov/form.hpp"
#include "maxcov/frame.hpp"
#include "maxcov/maxwell.hpp"
#include "maxcov/scalar_jet.hpp"
#include "maxcov/scalar_poly.hpp"

namespace maxcov {

/// Configuration failure: malformed document, bad key, inconsistent grades.
/// The message always names the offending field or key.
class ScenarioError : public std::runtime_error {
public:
  explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/// One named form given literally: polynomial coefficients keyed by
/// multi-index strings ("01" is dt∧dx). Rationals travel as strings so the
/// exact backend never sees a float.
struct FormSpec {
  int grade = 0;
  std::map<std::uint8_t, Polynomial> coefficients;
};

struct ScenarioConfig {
  std::string signature = "+---";
  Rational beta = Rational(3, 5);
  std::string backend = "polynomial";     // "polynomial" | "jet"
  std::string source_mode = "explicit";   // "potential" | "ampere_derived" | "explicit"
  std::map<std::string, FormSpec> fields;
  int sample_count = 20;
  std::uint64_t seed = 1;
  int quadrature_order = 8;
  std::vector<std::string> checks;        // optional: "GG_zero", "GstarG_nonneg"
};

namespace scenario_detail {

using nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ScenarioError(where + " is missing required key \"" + key + "\"");
  return *it;
}

inline std::string require_string(const json& j, const std::string& key,
                                  const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_string()) throw ScenarioError(where + " key \"" + key + "\" must be a string");
  return v.get<std::string>();
}

inline Rational parse_rational(const std::string& text, const std::string& where) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(where + ": " + e.what());
  }
}

inline FormSpec parse_form(const json& j, const std::string& name) {
  const std::string where = "field \"" + name + "\"";
  if (!j.is_object()) throw ScenarioError(where + " must be an object");
  FormSpec spec;
  const json& grade = require(j, "grade", where);
  if (!grade.is_number_integer() || grade.get<int>() < 0 || grade.get<int>() > 4)
    throw ScenarioError(where + " key \"grade\" must be an integer in [0,4]");
  spec.grade = grade.get<int>();

  const json& coeffs = require(j, "coefficients", where);
  if (!coeffs.is_object()) throw ScenarioError(where + " key \"coefficients\" must be an object");
  for (const auto& [key, terms] : coeffs.items()) {
    std::uint8_t m = 0;
    try {
      m = mask::parse(key);
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(where + ": " + e.what());
    }
    if (mask::grade_of(m) != spec.grade)
      throw ScenarioError(where + ": multi-index \"" + key + "\" has grade " +
                          std::to_string(mask::grade_of(m)) + ", form grade is " +
                          std::to_string(spec.grade));
    if (!terms.is_array())
      throw ScenarioError(where + ": coefficient \"" + key + "\" must be an array of terms");
    Polynomial poly;
    for (const json& term : terms) {
      const std::string term_where = where + " coefficient \"" + key + "\"";
      const std::string coeff = require_string(term, "coeff", term_where);
      const json& exps = require(term, "exponents", term_where);
      if (!exps.is_array() || exps.size() != 4)
        throw ScenarioError(term_where + " key \"exponents\" must be a 4-integer array");
      Polynomial::Exponents e{};
      for (std::size_t i = 0; i < 4; ++i) {
        if (!exps[i].is_number_integer() || exps[i].get<int>() < 0)
          throw ScenarioError(term_where + " exponents must be non-negative integers");
        e[i] = static_cast<std::uint8_t>(exps[i].get<int>());
      }
      poly.add_term(e, parse_rational(coeff, term_where));
    }
    if (!poly.is_structural_zero()) spec.coefficients.emplace(m, std::move(poly));
  }
  return spec;
}

}  // namespace scenario_detail

inline ScenarioConfig parse_scenario(const nlohmann::json& j) {
  using scenario_detail::require;
  if (!j.is_object()) throw ScenarioError("scenario document must be a JSON object");

  ScenarioConfig cfg;
  cfg.signature = scenario_detail::require_string(j, "signature", "scenario");
  if (cfg.signature != "+---")
    throw ScenarioError("scenario field \"signature\" must be \"+---\"");

  cfg.beta = scenario_detail::parse_rational(
      scenario_detail::require_string(j, "beta", "scenario"), "scenario field \"beta\"");
  if (!(Rational::zero() < cfg.beta && cfg.beta < Rational::one()))
    throw ScenarioError("scenario field \"beta\" must lie in (0,1)");

  cfg.backend = scenario_detail::require_string(j, "backend", "scenario");
  if (cfg.backend != "polynomial" && cfg.backend != "jet")
    throw ScenarioError("scenario field \"backend\" must be \"polynomial\" or \"jet\"");

  cfg.source_mode = scenario_detail::require_string(j, "source_mode", "scenario");
  if (cfg.source_mode != "potential" && cfg.source_mode != "ampere_derived" &&
      cfg.source_mode != "explicit")
    throw ScenarioError(
        "scenario field \"source_mode\" must be \"potential\", \"ampere_derived\", or "
        "\"explicit\"");

  const nlohmann::json& fields = require(j, "fields", "scenario");
  if (!fields.is_object()) throw ScenarioError("scenario field \"fields\" must be an object");
  for (const auto& [name, body] : fields.items()) {
    if (name != "A" && name != "F" && name != "G" && name != "J")
      throw ScenarioError("scenario field \"fields\" has unknown entry \"" + name +
                          "\" (expected A, F, G, or J)");
    cfg.fields.emplace(name, scenario_detail::parse_form(body, name));
  }

  if (auto it = j.find("sample_points"); it != j.end()) {
    const nlohmann::json& sp = *it;
    if (!sp.is_object()) throw ScenarioError("scenario field \"sample_points\" must be an object");
    const nlohmann::json& count = require(sp, "count", "scenario field \"sample_points\"");
    if (!count.is_number_integer() || count.get<int>() < 1)
      throw ScenarioError("scenario field \"sample_points.count\" must be a positive integer");
    cfg.sample_count = count.get<int>();
    const nlohmann::json& seed = require(sp, "seed", "scenario field \"sample_points\"");
    if (!seed.is_number_unsigned() && !seed.is_number_integer())
      throw ScenarioError("scenario field \"sample_points.seed\" must be an integer");
    cfg.seed = seed.get<std::uint64_t>();
  }

  if (auto it = j.find("quadrature_order"); it != j.end()) {
    if (!it->is_number_integer() || it->get<int>() < 2)
      throw ScenarioError("scenario field \"quadrature_order\" must be an integer >= 2");
    cfg.quadrature_order = it->get<int>();
  }

  if (auto it = j.find("checks"); it != j.end()) {
    if (!it->is_array()) throw ScenarioError("scenario field \"checks\" must be an array");
    for (const auto& c : *it) {
      if (!c.is_string()) throw ScenarioError("scenario field \"checks\" entries must be strings");
      const std::string name = c.get<std::string>();
      if (name != "GG_zero" && name != "GstarG_nonneg")
        throw ScenarioError("scenario field \"checks\" has unknown check \"" + name + "\"");
      cfg.checks.push_back(name);
    }
  }
  return cfg;
}

inline ScenarioConfig parse_scenario_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

inline ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

inline nlohmann::json serialize_scenario(const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["signature"] = cfg.signature;
  j["beta"] = cfg.beta.str();
  j["backend"] = cfg.backend;
  j["source_mode"] = cfg.source_mode;
  nlohmann::json fields = nlohmann::json::object();
  for (const auto& [name, spec] : cfg.fields) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [m, poly] : spec.coefficients) {
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& [e, c] : poly.terms()) {
        nlohmann::json term;
        term["coeff"] = c.str();
        term["exponents"] = {e[0], e[1], e[2], e[3]};
        terms.push_back(term);
      }
      coeffs[mask::to_string(m)] = terms;
    }
    nlohmann::json body;
    body["grade"] = spec.grade;
    body["coefficients"] = coeffs;
    fields[name] = body;
  }
  j["fields"] = fields;
  j["sample_points"] = {{"count", cfg.sample_count}, {"seed", cfg.seed}};
  j["quadrature_order"] = cfg.quadrature_order;
  if (!cfg.checks.empty()) j["checks"] = cfg.checks;
  return j;
}

namespace scenario_detail {

template <class Field>
Field field_from_polynomial(const Polynomial& p) {
  if constexpr (std::is_same_v<Field, Polynomial>)
    return p;
  else
    return Field::from_polynomial(p);
}

template <class Field>
DifferentialForm<Field> form_from_spec(const FormSpec& spec) {
  DifferentialForm<Field> a(spec.grade);
  for (const auto& [m, poly] : spec.coefficients)
    a.add_term(m, field_from_polynomial<Field>(poly));
  return a;
}

}  // namespace scenario_detail

/// Materializes the scenario's field content under the given backend.
/// potential: F = dA, G = ⋆F, J = dG. ampere_derived: J = dG, F optional.
/// explicit: F, G, J taken literally (absent means zero).
template <class Field>
EMFieldState<Field> build_state(const ScenarioConfig& cfg) {
  auto form_of = [&](const std::string& name, int grade) {
    auto it = cfg.fields.find(name);
    if (it == cfg.fields.end()) return DifferentialForm<Field>::zero(grade);
    if (it->second.grade != grade)
      throw ScenarioError("field \"" + name + "\" must have grade " + std::to_string(grade));
    return scenario_detail::form_from_spec<Field>(it->second);
  };
  auto has = [&](const std::string& name) { return cfg.fields.count(name) > 0; };
  auto forbid = [&](const std::string& name) {
    if (has(name))
      throw ScenarioError("field \"" + name + "\" is not allowed with source_mode \"" +
                          cfg.source_mode + "\"");
  };

  EMFieldState<Field> state;
  if (cfg.source_mode == "potential") {
    if (!has("A")) throw ScenarioError("source_mode \"potential\" requires field \"A\"");
    forbid("F");
    forbid("G");
    forbid("J");
    state.F = faraday_from_potential(form_of("A", 1));
    state.G = hodge_star(state.F);
    state.J = exterior_derivative(state.G);
  } else if (cfg.source_mode == "ampere_derived") {
    if (!has("G")) throw ScenarioError("source_mode \"ampere_derived\" requires field \"G\"");
    forbid("A");
    forbid("J");
    state.F = form_of("F", 2);
    state.G = form_of("G", 2);
    state.J = exterior_derivative(state.G);
  } else {
    forbid("A");
    state.F = form_of("F", 2);
    state.G = form_of("G", 2);
    state.J = form_of("J", 3);
  }
  return state;
}

}  // namespace maxcov

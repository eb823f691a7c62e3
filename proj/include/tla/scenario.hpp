#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tla/atiyah.hpp"
#include "tla/cech.hpp"
#include "tla/gluing.hpp"

namespace tla {

// Function-element grammar shared by scenario files and reports:
//   expr   := term (('+' | '-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' '-'? digits)?
//   atom   := digits ('/' digits)? | 'i' | 'x' digits | 'rho' digits
//           | '(' expr ')'
// Variable names are 1-based (x1..xm, rho1..rhoN); negative powers are
// defined on bare coordinate variables only. Throws std::invalid_argument
// naming the character position on malformed input.
PolyFn parse_poly(const std::string& s);
Scalar parse_scalar(const std::string& s);  // requires a constant
Rat parse_rat(const std::string& s);        // requires a real constant

// One named family of local forms, one per chart, each written in that
// chart's trivialization.
struct FormFamily {
  std::string name;
  ValueKind kind = ValueKind::kScalar;
  std::vector<TlaForm> charts;
};

// Parsed scenario file. Sections are optional; commands state what they
// need. When a transitions section is present the gluing is generated from
// it at load time, so `gluing` is the single source of transition data for
// all downstream computation.
struct Scenario {
  std::string path;
  std::optional<LieAlgebra> algebra;
  std::optional<Nerve> nerve;
  std::optional<GluingData> gluing;
  std::optional<TransitionFamily> transitions;
  std::string transitions_model;            // "atiyah" or "endomorphism"
  std::vector<ScalarMat> transition_basis;  // realization matrices
  std::optional<MetricTriple> metric;
  std::vector<FormFamily> forms;
  nlohmann::json params = nlohmann::json::object();
};

// Reads and validates a scenario file. Errors carry the file path and a
// location (byte position for syntax, JSON path for semantic violations).
Scenario load_scenario(const std::string& path);
Scenario scenario_from_json(const nlohmann::json& j, const std::string& path);

// Element parsers used by the loader, exposed for reuse and round-trip
// testing. `where` prefixes error messages.
PolyMat parse_poly_matrix(const nlohmann::json& j, size_t rows, size_t cols,
                          const std::string& where);
ScalarMat parse_scalar_matrix(const nlohmann::json& j, size_t rows,
                              size_t cols, const std::string& where);
TlaForm parse_form(const nlohmann::json& j, size_t m, size_t n,
                   ValueKind kind, const std::string& where);

// Serializers; polynomial and scalar entries use the grammar above, so
// every emitted object parses back to an equal one.
nlohmann::json json_mat(const PolyMat& m);
nlohmann::json json_mat(const ScalarMat& m);
nlohmann::json json_form(const TlaForm& f);
nlohmann::json json_algebra(const LieAlgebra& L);
nlohmann::json json_nerve(const Nerve& nv);
nlohmann::json json_gluing(const GluingData& gd);
nlohmann::json json_metric(const MetricTriple& t);
nlohmann::json json_scenario(const Scenario& sc);

}  // namespace tla

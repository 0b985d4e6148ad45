#include "qlucas/json_io.hpp"

namespace qlucas {

Json to_json(const IntPolynomial& p) { return Json(p.to_decimal_strings()); }

IntPolynomial polynomial_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("polynomial must be an array of decimal strings");
  std::vector<std::string> coeffs;
  for (const auto& c : j) {
    if (c.is_string()) {
      coeffs.push_back(c.get<std::string>());
    } else if (c.is_number_integer()) {
      coeffs.push_back(std::to_string(c.get<std::int64_t>()));
    } else {
      throw std::invalid_argument("polynomial coefficient must be a decimal string or an integer");
    }
  }
  return IntPolynomial::from_decimal_strings(coeffs);
}

Json to_json(const RatioSpec& spec) {
  Json j;
  j["dim"] = spec.dim;
  j["e"] = spec.e;
  j["f"] = spec.f;
  return j;
}

RatioSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidSpec("spec must be a JSON object");
  for (const char* key : {"dim", "e", "f"}) {
    if (!j.contains(key)) throw InvalidSpec(std::string("spec is missing \"") + key + "\"");
  }
  RatioSpec spec;
  try {
    if (!j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() <= 0) {
      throw InvalidSpec("\"dim\" must be a positive integer");
    }
    spec.dim = j["dim"].get<std::size_t>();
    auto read = [](const Json& tuple, const char* name) {
      if (!tuple.is_array()) throw InvalidSpec(std::string("\"") + name + "\" must be an array of vectors");
      std::vector<IntVector> out;
      for (const auto& v : tuple) {
        if (!v.is_array()) throw InvalidSpec(std::string("entries of \"") + name + "\" must be arrays");
        IntVector vec;
        for (const auto& c : v) {
          if (!c.is_number_integer()) throw InvalidSpec(std::string("components of \"") + name + "\" must be integers");
          vec.push_back(c.get<std::int64_t>());
        }
        out.push_back(std::move(vec));
      }
      return out;
    };
    spec.e = read(j["e"], "e");
    spec.f = read(j["f"], "f");
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidSpec(std::string("malformed spec: ") + ex.what());
  }
  spec.validate();
  return spec;
}

Json to_json(const RationalPoint& x) {
  Json j = Json::array();
  for (const auto& c : x.coords) j.push_back(to_string(c));
  return j;
}

Json to_json(const CellSignature& cell, const RatioSpec&) {
  Json j;
  Json floors = Json::array();
  for (const auto& [t, m] : cell.floors) floors.push_back(Json{{"vector", t}, {"floor", m}});
  j["floors"] = std::move(floors);
  j["feasible"] = cell.feasible;
  j["witness"] = cell.witness ? to_json(*cell.witness) : Json(nullptr);
  j["delta"] = cell.delta;
  j["in_D"] = cell.in_domain_D;
  return j;
}

Json to_json(const LandauReport& report, const RatioSpec& spec) {
  Json j;
  j["spec"] = to_json(spec);
  j["balanced"] = report.balanced;
  j["integrality"] = report.integrality;
  j["criterion_D"] = report.criterion_D;
  j["min_value_overall"] = report.min_value_overall;
  j["min_value_on_D"] = report.min_value_on_D ? Json(*report.min_value_on_D) : Json(nullptr);
  j["cell_count"] = report.cells.size();
  Json violating = Json::array();
  for (const auto& c : report.violating_cells) violating.push_back(to_json(c, spec));
  j["violating_cells"] = std::move(violating);
  Json cells = Json::array();
  for (const auto& c : report.cells) cells.push_back(to_json(c, spec));
  j["cells"] = std::move(cells);
  return j;
}

Json to_json(const CongruenceReport& report) {
  Json j;
  j["kind"] = report.kind;
  j["subject"] = report.subject;
  Json ranges = Json::object();
  for (const auto& [k, v] : report.ranges) ranges[k] = v;
  j["ranges"] = std::move(ranges);
  Json notes = Json::object();
  for (const auto& [k, v] : report.notes) notes[k] = v;
  j["notes"] = std::move(notes);
  j["checked"] = report.checked;
  j["failure_count"] = report.failures.size();
  Json failures = Json::array();
  for (const auto& f : report.failures) {
    failures.push_back(Json{{"b", f.b},
                            {"a", f.a},
                            {"n", f.n},
                            {"lhs_residue", to_json(f.lhs_residue)},
                            {"rhs_residue", to_json(f.rhs_residue)}});
  }
  j["failures"] = std::move(failures);
  j["passed"] = report.passed();
  return j;
}

Json to_json(const TruncatedSeries& s) {
  Json j = Json::array();
  for (const auto& [n, c] : s.coeffs()) j.push_back(Json{{"exponents", n}, {"coeff", to_json(c)}});
  return j;
}

Json to_json(const LucasVerdict& verdict) {
  Json j;
  j["p"] = verdict.p;
  j["k"] = verdict.k;
  j["holds"] = verdict.holds;
  j["checked"] = verdict.checked;
  j["witness"] = verdict.witness ? Json(*verdict.witness) : Json(nullptr);
  Json cofactor = Json::array();
  for (const auto& [a, c] : verdict.cofactor) cofactor.push_back(Json{{"exponents", a}, {"coeff", c.get_str()}});
  j["cofactor"] = std::move(cofactor);
  return j;
}

Json to_json(const RelationCandidate& cand) {
  Json j;
  Json terms = Json::array();
  for (const auto& t : cand.terms) terms.push_back(Json::array({t.exponents, t.coeff.get_str()}));
  j["terms"] = std::move(terms);
  j["text"] = cand.to_string();
  j["verified_order"] = cand.verified_order;
  j["stability_checked"] = cand.stability_checked;
  j["truncation_artifact"] = cand.truncation_artifact;
  return j;
}

Json to_json(const RelationSearch& search) {
  Json j;
  j["dx"] = search.dx;
  j["dy"] = search.dy;
  j["order"] = search.order;
  j["unknowns"] = search.unknowns;
  j["equations"] = search.equations;
  j["rank"] = search.rank;
  Json cands = Json::array();
  for (const auto& c : search.candidates) cands.push_back(to_json(c));
  j["candidates"] = std::move(cands);
  j["verdict"] = search.candidates.empty()
                     ? "no relation with deg_x <= " + std::to_string(search.dx) + ", deg_y <= " +
                           std::to_string(search.dy) + " up to order " + std::to_string(search.order)
                     : std::to_string(search.candidates.size()) + " relation(s) vanish to order " +
                           std::to_string(search.order);
  return j;
}

}  // namespace qlucas

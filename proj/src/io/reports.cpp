#include <sstream>

#include "fhlab/io/json_io.hpp"

namespace fhlab::io {

namespace {

Json rationals(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

template <typename Key>
Json weight_map(const std::map<Key, Rational>& weights) {
  Json out = Json::array();
  for (const auto& [key, w] : weights) out.push_back(Json{{"element", key}, {"weight", rational_to_json(w)}});
  return out;
}

const char* lp_status(fraclp::LpStatus status) {
  switch (status) {
    case fraclp::LpStatus::optimal: return "optimal";
    case fraclp::LpStatus::infeasible: return "infeasible";
    case fraclp::LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

Json lp_to_json(const fraclp::LpSolution& lp) {
  return Json{{"status", lp_status(lp.status)},
              {"value", rational_to_json(lp.value)},
              {"primal", rationals(lp.primal)},
              {"dual", rationals(lp.dual)},
              {"pivots", lp.pivots}};
}

Json optional_rational(const std::optional<Rational>& value) {
  return value ? rational_to_json(*value) : Json(nullptr);
}

Json type_to_json(const typecount::PositiveType& type) {
  return Json{{"instances", type.instances}, {"witness_count", type.witnesses.count()}};
}

bool is_rational(const Json& json) {
  return json.is_object() && json.size() == 2 && json.contains("num") && json.contains("den");
}

std::string scalar_text(const Json& json) {
  if (json.is_string()) return json.get<std::string>();
  if (json.is_null()) return "";
  return json.dump();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void flatten(const Json& json, const std::string& path, std::ostringstream& out) {
  if (is_rational(json)) {
    out << csv_field(path) << ',' << csv_field(scalar_text(json.at("num")) + "/" +
                                               scalar_text(json.at("den")))
        << '\n';
  } else if (json.is_object()) {
    for (const auto& [key, value] : json.items())
      flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (json.is_array()) {
    if (json.empty()) out << csv_field(path) << ",\n";
    for (std::size_t i = 0; i < json.size(); ++i)
      flatten(json[i], path.empty() ? std::to_string(i) : path + "." + std::to_string(i), out);
  } else {
    out << csv_field(path) << ',' << csv_field(scalar_text(json)) << '\n';
  }
}

}  // namespace

Json to_json(const setfam::ConsReport& report) {
  return Json{{"k", report.k},
              {"cons_count", report.cons_count},
              {"total", integer_to_json(report.total)},
              {"fraction", rational_to_json(report.fraction)}};
}

Json to_json(const setfam::FhpReport& report) {
  return Json{{"k", report.k},
              {"alpha", rational_to_json(report.alpha)},
              {"cons", to_json(report.cons)},
              {"hypothesis_holds", report.hypothesis_holds},
              {"best_beta", rational_to_json(report.best_beta)},
              {"witness_element", report.witness_element},
              {"witness_indices", report.witness_indices},
              {"empty_members", report.empty_members}};
}

Json to_json(const setfam::PkResult& result) {
  return Json{{"holds", result.holds},
              {"counterexample", result.counterexample ? Json(*result.counterexample) : Json(nullptr)},
              {"tuples_checked", result.tuples_checked}};
}

Json to_json(const setfam::ColorfulReport& report) {
  return Json{{"rainbow_consistent", report.rainbow_consistent},
              {"rainbow_total", integer_to_json(report.rainbow_total)},
              {"fraction", rational_to_json(report.fraction)},
              {"alpha", rational_to_json(report.alpha)},
              {"hypothesis_holds", report.hypothesis_holds},
              {"best_beta", rationals(report.best_beta)},
              {"max_best_beta", rational_to_json(report.max_best_beta)},
              {"best_family", report.best_family},
              {"reference_beta", rational_to_json(report.reference_beta)}};
}

Json to_json(const setfam::MeasureReport& report) {
  return Json{{"d", report.d},
              {"alpha", rational_to_json(report.alpha)},
              {"consistent_mass", rational_to_json(report.consistent_mass)},
              {"max_depth_mass", rational_to_json(report.max_depth_mass)},
              {"witness_element", report.witness_element},
              {"hypothesis_holds", report.hypothesis_holds}};
}

Json to_json(const fraclp::IntersectionNumber& result) {
  return Json{{"value", rational_to_json(result.value)},
              {"degenerate", result.degenerate},
              {"distribution", weight_map(result.distribution)},
              {"lp", lp_to_json(result.lp)}};
}

Json to_json(const fraclp::TransversalResult& result) {
  return Json{{"feasible", result.feasible},
              {"tau_star", result.feasible ? rational_to_json(result.tau_star) : Json(nullptr)},
              {"weights", weight_map(result.weights)},
              {"integer_tau", result.integer_tau ? Json(*result.integer_tau) : Json(nullptr)},
              {"integer_witness",
               result.integer_witness ? Json(*result.integer_witness) : Json(nullptr)},
              {"lp", lp_to_json(result.lp)}};
}

Json to_json(const vc::DualShatter& dual) {
  Json values = Json::array();
  for (const auto& [n, value] : dual.values) {
    values.push_back(Json{{"n", n},
                          {"pi_star", value},
                          {"mode", dual.modes.at(n) == vc::DualMode::exhaustive ? "exhaustive"
                                                                                : "sampled"},
                          {"witness", dual.witnesses.at(n)}});
  }
  return Json{{"values", values}, {"seed", dual.seed}};
}

Json to_json(const vc::ShatterReport& report) {
  return Json{{"vc_lower", report.vc_lower},
              {"vc_exact", report.vc_exact ? Json(*report.vc_exact) : Json(nullptr)},
              {"cap", report.cap},
              {"witness", report.witness},
              {"dual", to_json(report.dual)},
              {"density_fit", optional_rational(report.density_fit)}};
}

Json to_json(const constructs::RainbowExtraction& extraction) {
  return Json{{"parts", extraction.parts},
              {"indices", extraction.indices},
              {"size", extraction.indices.size()},
              {"trial", extraction.trial},
              {"seed", extraction.seed}};
}

Json to_json(const sqfint::PSatisfiability& result) {
  return Json{{"satisfiable", result.satisfiable},
              {"witness", result.witness ? Json(*result.witness) : Json(nullptr)},
              {"modulus", result.modulus}};
}

Json to_json(const sqfint::DensityCertificate& certificate) {
  return Json{{"epsilon_lower", rational_to_json(certificate.epsilon_lower)},
              {"epsilon_upper", rational_to_json(certificate.epsilon_upper)},
              {"B", certificate.B},
              {"D", integer_to_json(certificate.D)},
              {"tail_prime", certificate.tail_prime},
              {"local_primes", certificate.local_primes},
              {"n", certificate.n},
              {"k", certificate.k}};
}

Json to_json(const sqfint::SqfFhpReport& report) {
  return Json{{"fhp", to_json(report.fhp)},
              {"window", report.window},
              {"certificate", to_json(report.certificate)},
              {"delta", rational_to_json(report.delta)},
              {"gamma", rational_to_json(report.gamma)},
              {"beta_theory", rational_to_json(report.beta_theory)},
              {"all_empty", report.all_empty}};
}

Json to_json(const sqfint::DicksonResult& result) {
  return Json{{"admissible", result.admissible},
              {"obstruction", result.obstruction ? Json(*result.obstruction) : Json(nullptr)},
              {"checked_up_to", result.checked_up_to}};
}

Json to_json(const pseudofield::DimMeasFit& fit) {
  return Json{{"d", fit.d},
              {"mu", rational_to_json(fit.mu)},
              {"residual", rational_to_json(fit.residual)},
              {"constant", rational_to_json(fit.constant)},
              {"within_bound", fit.within_bound},
              {"ambiguous", fit.ambiguous},
              {"valid_dimensions", fit.valid_dimensions}};
}

Json to_json(const pseudofield::FfFhpReport& report) {
  return Json{{"fhp", to_json(report.fhp)},
              {"q", report.q},
              {"dimension", report.dimension},
              {"members", report.members},
              {"ground", report.ground},
              {"empty_parameter_set", report.empty_parameter_set}};
}

Json to_json(const pseudofield::ColorfulFfReport& report) {
  Json measure = Json::array();
  for (const auto& m : report.measure) measure.push_back(to_json(m));
  return Json{{"colorful", to_json(report.colorful)},
              {"measure", measure},
              {"q", report.q},
              {"degenerate", report.degenerate}};
}

Json to_json(const typecount::CountReport& report) {
  Json witness = Json::array();
  for (const auto& type : report.witness) witness.push_back(type_to_json(type));
  return Json{{"m", report.m},
              {"k", report.k},
              {"l", report.l},
              {"value", report.value},
              {"exact", report.exact},
              {"greedy_lower", report.greedy_lower},
              {"mode", report.mode == typecount::SearchMode::exhaustive ? "exhaustive" : "sampled"},
              {"subsets_examined", report.subsets_examined},
              {"best_parameters", report.best_parameters},
              {"witness", witness},
              {"seed", report.seed},
              {"caveat", typecount::kAmbientCaveat}};
}

Json to_json(const typecount::PowerSavingReport& report) {
  return Json{{"l_values", report.l_values},
              {"values", report.values},
              {"exact", report.exact},
              {"exponent_estimate", optional_rational(report.exponent_estimate)},
              {"zarankiewicz_exponent", rational_to_json(report.zarankiewicz_exponent)},
              {"saving_consistent", report.saving_consistent},
              {"caveat", typecount::kAmbientCaveat}};
}

Json to_json(const typecount::DividingResult& result) {
  const char* status = result.status == typecount::DividingStatus::divides ? "divides"
                       : result.status == typecount::DividingStatus::does_not_divide
                           ? "does_not_divide"
                           : "indeterminate";
  return Json{{"status", status},
              {"instance", result.instance ? Json(*result.instance) : Json(nullptr)},
              {"sequence", result.sequence},
              {"nodes", result.nodes},
              {"caveat", typecount::kAmbientCaveat}};
}

std::string to_csv(const Json& json) {
  std::ostringstream out;
  out << "path,value\n";
  flatten(json, "", out);
  return out.str();
}

}  // namespace fhlab::io

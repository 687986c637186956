#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "netnl/bloch.hpp"
#include "netnl/channels.hpp"
#include "netnl/criteria.hpp"
#include "netnl/errors.hpp"
#include "netnl/network.hpp"
#include "netnl/oracle.hpp"

namespace netnl {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// topology / placement tokens

inline std::string to_string(Topology t) {
  switch (t) {
    case Topology::linear:
      return "linear";
    case Topology::star:
      return "star";
    case Topology::star_fnn3:
      return "fnn3";
  }
  return "linear";
}

inline Topology topology_from_string(const std::string& s) {
  if (s == "linear") return Topology::linear;
  if (s == "star") return Topology::star;
  if (s == "fnn3" || s == "star-fnn3") return Topology::star_fnn3;
  throw ParseError("unknown topology '" + s + "' (expected linear|star|fnn3)");
}

inline std::string to_string(Placement p) {
  switch (p) {
    case Placement::none:
      return "none";
    case Placement::one_side_a:
      return "one-side-a";
    case Placement::one_side_b:
      return "one-side-b";
    case Placement::both_sides:
      return "both-sides";
  }
  return "none";
}

inline Placement placement_from_string(const std::string& s) {
  if (s == "none") return Placement::none;
  if (s == "one-side-a") return Placement::one_side_a;
  if (s == "one-side-b") return Placement::one_side_b;
  if (s == "both-sides") return Placement::both_sides;
  throw ParseError("unknown placement '" + s + "'");
}

// ---------------------------------------------------------------------------
// states

inline json to_json(const BlochState& s) {
  json j;
  j["a"] = {s.a(0), s.a(1), s.a(2)};
  j["b"] = {s.b(0), s.b(1), s.b(2)};
  json w = json::array();
  for (int i = 0; i < 3; ++i) w.push_back({s.W(i, 0), s.W(i, 1), s.W(i, 2)});
  j["W"] = w;
  return j;
}

inline BlochState state_from_json(const json& j) {
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "bell-phi+") return bell_phi_plus();
    if (name == "bell-phi-") return bell_phi_minus();
    if (name == "bell-psi+") return bell_psi_plus();
    if (name == "bell-psi-") return bell_psi_minus();
    if (name == "max-mixed") return max_mixed();
    throw ParseError("unknown state preset '" + name + "'");
  }
  if (!j.is_object()) throw ParseError("state literal must be a preset name or an object");
  BlochState s;
  try {
    if (j.contains("a"))
      for (int i = 0; i < 3; ++i) s.a(i) = j.at("a").at(static_cast<size_t>(i)).get<double>();
    if (j.contains("b"))
      for (int i = 0; i < 3; ++i) s.b(i) = j.at("b").at(static_cast<size_t>(i)).get<double>();
    if (j.contains("W"))
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          s.W(i, k) = j.at("W").at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed state literal: ") + e.what());
  }
  return s;
}

// ---------------------------------------------------------------------------
// channels

// Parsed channel literal. Named families keep their noise parameter so the
// theorem evaluators can be routed exactly.
struct ChannelSpec {
  enum class Kind { random_unitary, depolarizing, dephasing, pauli_damping, affine };
  Kind kind = Kind::random_unitary;
  RandomUnitaryChannel ru;
  PauliDampingChannel nu;
  QubitChannelAffine affine;
  double noise = 0.0;  // q or p for the named families

  bool is_random_unitary() const {
    return kind == Kind::random_unitary || kind == Kind::depolarizing || kind == Kind::dephasing;
  }
  bool is_pauli_damping() const { return kind == Kind::pauli_damping; }

  QubitChannelAffine to_affine() const {
    if (is_random_unitary()) return ru_to_affine(ru);
    if (kind == Kind::pauli_damping) return nu_to_affine(nu);
    return affine;
  }
};

inline ChannelSpec channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("channel literal must be an object with a 'kind' field");
  ChannelSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "depolarizing") {
      spec.kind = ChannelSpec::Kind::depolarizing;
      spec.noise = j.at("q").get<double>();
      spec.ru = depolarizing(spec.noise);
    } else if (kind == "dephasing") {
      spec.kind = ChannelSpec::Kind::dephasing;
      spec.noise = j.at("p").get<double>();
      spec.ru = dephasing(spec.noise);
    } else if (kind == "random-unitary") {
      spec.kind = ChannelSpec::Kind::random_unitary;
      spec.ru.alpha = cplx(j.at("alpha").at(0).get<double>(), j.at("alpha").at(1).get<double>());
      spec.ru.beta = cplx(j.at("beta").at(0).get<double>(), j.at("beta").at(1).get<double>());
      validate_random_unitary(spec.ru);
    } else if (kind == "pauli-damping") {
      spec.kind = ChannelSpec::Kind::pauli_damping;
      spec.nu.t = j.at("t").get<double>();
      spec.nu.lambda1 = j.at("l1").get<double>();
      spec.nu.lambda2 = j.value("l2", 0.0);
      spec.nu.lambda3 = j.at("l3").get<double>();
    } else if (kind == "affine") {
      spec.kind = ChannelSpec::Kind::affine;
      for (int i = 0; i < 3; ++i)
        spec.affine.t(i) = j.at("t").at(static_cast<size_t>(i)).get<double>();
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
          spec.affine.T(i, k) =
              j.at("T").at(static_cast<size_t>(i)).at(static_cast<size_t>(k)).get<double>();
    } else {
      throw ParseError("unknown channel kind '" + kind + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed channel literal: ") + e.what());
  }
  return spec;
}

inline ChannelSpec parse_channel(const std::string& text) {
  if (text == "identity") {
    ChannelSpec spec;
    spec.kind = ChannelSpec::Kind::random_unitary;
    spec.ru = RandomUnitaryChannel{};
    return spec;
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("channel literal is not valid JSON: ") + e.what());
  }
  return channel_from_json(j);
}

inline json to_json(const ChannelSpec& spec) {
  json j;
  switch (spec.kind) {
    case ChannelSpec::Kind::depolarizing:
      j["kind"] = "depolarizing";
      j["q"] = spec.noise;
      break;
    case ChannelSpec::Kind::dephasing:
      j["kind"] = "dephasing";
      j["p"] = spec.noise;
      break;
    case ChannelSpec::Kind::random_unitary:
      j["kind"] = "random-unitary";
      j["alpha"] = {spec.ru.alpha.real(), spec.ru.alpha.imag()};
      j["beta"] = {spec.ru.beta.real(), spec.ru.beta.imag()};
      break;
    case ChannelSpec::Kind::pauli_damping:
      j["kind"] = "pauli-damping";
      j["t"] = spec.nu.t;
      j["l1"] = spec.nu.lambda1;
      if (spec.nu.lambda2 != 0.0) j["l2"] = spec.nu.lambda2;
      j["l3"] = spec.nu.lambda3;
      break;
    case ChannelSpec::Kind::affine: {
      j["kind"] = "affine";
      j["t"] = {spec.affine.t(0), spec.affine.t(1), spec.affine.t(2)};
      json rows = json::array();
      for (int i = 0; i < 3; ++i)
        rows.push_back({spec.affine.T(i, 0), spec.affine.T(i, 1), spec.affine.T(i, 2)});
      j["T"] = rows;
      break;
    }
  }
  return j;
}

// ---------------------------------------------------------------------------
// scenarios

struct ScenarioFile {
  NetworkScenario scenario;
  std::optional<ChannelSpec> channel;
  std::optional<UsagePattern> pattern;
};

inline ScenarioFile scenario_from_json(const json& j) {
  ScenarioFile out;
  try {
    out.scenario.topology = topology_from_string(j.at("topology").get<std::string>());
    for (const auto& st : j.at("states")) out.scenario.states.push_back(state_from_json(st));
    if (j.contains("n") && j.at("n").get<int>() != out.scenario.n())
      throw ParseError("declared n differs from the number of states");
    if (j.contains("channel")) out.channel = channel_from_json(j.at("channel"));
    if (j.contains("placements")) {
      UsagePattern u;
      u.n = out.scenario.n();
      for (const auto& p : j.at("placements"))
        u.placement.push_back(placement_from_string(p.get<std::string>()));
      u.validate();
      out.pattern = std::move(u);
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed scenario file: ") + e.what());
  }
  validate_scenario(out.scenario);
  return out;
}

inline json to_json(const NetworkScenario& sc) {
  json j;
  j["topology"] = to_string(sc.topology);
  j["n"] = sc.n();
  json states = json::array();
  for (const auto& s : sc.states) states.push_back(to_json(s));
  j["states"] = states;
  return j;
}

inline json to_json(const UsagePattern& u) {
  json placements = json::array();
  for (const auto& p : u.placement) placements.push_back(to_string(p));
  json j;
  j["n"] = u.n;
  j["placements"] = placements;
  j["m1"] = u.m1();
  j["m2"] = u.m2();
  j["k"] = u.k();
  return j;
}

// ---------------------------------------------------------------------------
// reports

inline json to_json(const OrderedSingulars& e) { return json::array({e.e1, e.e2, e.e3}); }

inline json to_json(const BoundReport& r) {
  json j;
  j["bound"] = r.bound;
  j["threshold"] = r.threshold;
  j["violated"] = r.violated;
  json per = json::array();
  for (const auto& e : r.per_source) per.push_back(to_json(e));
  j["per_source_singulars"] = per;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const WitnessScenario& w) {
  json j;
  j["scenario"] = to_json(w.scenario);
  j["pattern"] = to_json(w.pattern);
  j["closed_form_bound"] = w.closed_form_bound;
  j["threshold"] = w.threshold;
  return j;
}

inline json to_json(const Verdict& v) {
  json j;
  j["theorem"] = v.theorem_id;
  j["status"] = to_string(v.status);
  j["lhs"] = v.criterion_lhs;
  j["rhs"] = v.criterion_rhs;
  j["margin"] = v.margin;
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (!v.notes.empty()) j["notes"] = v.notes;
  if (!v.details.empty()) j["details"] = v.details;
  return j;
}

inline json to_json(const CrosscheckReport& r) {
  json j;
  j["check"] = r.check;
  j["samples"] = r.samples;
  j["max_deviation"] = r.max_deviation;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  return j;
}

inline json to_json(const ScanReport& r) {
  json j;
  j["check"] = "conjecture1";
  j["grid_checked"] = r.grid_checked;
  j["sampled_checked"] = r.sampled_checked;
  j["violations"] = r.violations;
  j["min_margin"] = r.min_margin;
  j["seed"] = r.seed;
  j["pass"] = r.violations == 0;
  return j;
}

inline json to_json(const SoundnessReport& r) {
  json j;
  j["check"] = "soundness";
  j["channels_checked"] = r.channels_checked;
  j["scenarios_per_channel"] = r.scenarios_per_channel;
  j["max_excess"] = r.max_excess;
  j["pass"] = r.pass;
  j["seed"] = r.seed;
  return j;
}

inline json to_json(const WitnessResult& w) {
  json j;
  j["scenario"] = to_json(w.scenario);
  j["pattern"] = to_json(w.pattern);
  j["closed_form_bound"] = w.closed_form_bound;
  j["simulated_bound"] = w.simulated_bound;
  if (w.case_id > 0) j["case"] = w.case_id;
  return j;
}

}  // namespace netnl

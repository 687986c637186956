#include "netnl/serialization.hpp"

#include <random>

#include "gtest/gtest.h"
#include "netnl/random.hpp"

using namespace netnl;

TEST(serialization, state_presets_and_literals) {
  EXPECT_NEAR((state_from_json(json("bell-phi+")).W - bell_phi_plus().W).cwiseAbs().maxCoeff(),
              0.0, 1e-15);
  EXPECT_NEAR(state_from_json(json("max-mixed")).W.cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_THROW(state_from_json(json("bell-nope")), ParseError);

  const json literal = {{"a", {0.1, 0.0, 0.2}},
                        {"b", {0.0, 0.0, 0.0}},
                        {"W", {{0.5, 0, 0}, {0, -0.5, 0}, {0, 0, 0.5}}}};
  const BlochState s = state_from_json(literal);
  EXPECT_NEAR(s.a(2), 0.2, 1e-15);
  EXPECT_NEAR(s.W(1, 1), -0.5, 1e-15);

  // round trip through the JSON form
  const BlochState back = state_from_json(to_json(s));
  EXPECT_NEAR((back.W - s.W).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  EXPECT_NEAR((back.a - s.a).cwiseAbs().maxCoeff(), 0.0, 1e-15);
}

TEST(serialization, channel_literals) {
  const ChannelSpec dep = parse_channel(R"({"kind":"depolarizing","q":0.4})");
  EXPECT_TRUE(dep.is_random_unitary());
  EXPECT_NEAR(dep.noise, 0.4, 1e-15);

  const ChannelSpec dph = parse_channel(R"({"kind":"dephasing","p":0.5})");
  EXPECT_NEAR(ru_to_affine(dph.ru).T(2, 2), 1.0, 1e-12);

  const ChannelSpec ru =
      parse_channel(R"({"kind":"random-unitary","alpha":[0.6,0.0],"beta":[0.0,0.8]})");
  EXPECT_NEAR(ru.ru.beta.imag(), 0.8, 1e-15);

  const ChannelSpec nu = parse_channel(R"({"kind":"pauli-damping","t":0.2,"l1":0.2,"l3":0.2})");
  EXPECT_TRUE(nu.is_pauli_damping());
  EXPECT_NEAR(nu.nu.lambda2, 0.0, 1e-15);

  const ChannelSpec aff =
      parse_channel(R"({"kind":"affine","t":[0,0,0.1],"T":[[0.5,0,0],[0,0.5,0],[0,0,0.9]]})");
  EXPECT_NEAR(aff.affine.T(2, 2), 0.9, 1e-15);

  EXPECT_NEAR(ru_to_affine(parse_channel("identity").ru).T.trace(), 3.0, 1e-15);

  EXPECT_THROW(parse_channel("{not json"), ParseError);
  EXPECT_THROW(parse_channel(R"({"kind":"unknown"})"), ParseError);
  EXPECT_THROW(parse_channel(R"({"kind":"depolarizing"})"), ParseError);
  EXPECT_THROW(parse_channel(R"({"kind":"random-unitary","alpha":[1,0],"beta":[1,0]})"),
               NormViolation);

  // channel literals round-trip
  for (const auto& spec : {dep, dph, ru, nu, aff}) {
    const ChannelSpec back = channel_from_json(to_json(spec));
    EXPECT_NEAR((back.to_affine().T - spec.to_affine().T).cwiseAbs().maxCoeff(), 0.0, 1e-15);
    EXPECT_NEAR((back.to_affine().t - spec.to_affine().t).cwiseAbs().maxCoeff(), 0.0, 1e-15);
  }
}

TEST(serialization, scenario_files) {
  const json file = {
      {"topology", "linear"},
      {"n", 2},
      {"states", {"bell-phi-", "bell-phi-"}},
      {"channel", {{"kind", "dephasing"}, {"p", 0.5}}},
      {"placements", {"one-side-a", "one-side-a"}},
  };
  const ScenarioFile sf = scenario_from_json(file);
  EXPECT_EQ(sf.scenario.n(), 2);
  ASSERT_TRUE(sf.channel.has_value());
  ASSERT_TRUE(sf.pattern.has_value());
  EXPECT_EQ(sf.pattern->k(), 2);
  const NetworkScenario transformed =
      apply_usage(sf.channel->to_affine(), sf.scenario, *sf.pattern);
  EXPECT_NEAR(bound_linear(transformed).bound, std::sqrt(1.25), 1e-12);

  json bad = file;
  bad["n"] = 3;
  EXPECT_THROW(scenario_from_json(bad), ParseError);
  bad = file;
  bad["topology"] = "ring";
  EXPECT_THROW(scenario_from_json(bad), ParseError);
}

TEST(serialization, reports_expose_all_fields) {
  const BoundReport r = bound_linear(uniform_scenario(Topology::linear, 2, bell_phi_plus()));
  const json j = to_json(r);
  EXPECT_TRUE(j.at("violated").get<bool>());
  EXPECT_EQ(j.at("per_source_singulars").size(), 2u);
  EXPECT_NEAR(j.at("bound").get<double>(), std::sqrt(2.0), 1e-14);

  const Verdict v = thm2_unital_preserving(dephasing(0.5));
  const json vj = to_json(v);
  EXPECT_EQ(vj.at("status").get<std::string>(), "preserving_certified");
  EXPECT_TRUE(vj.contains("witness"));
  EXPECT_EQ(vj.at("theorem").get<std::string>(), "thm2");

  ScanConfig cfg;
  cfg.samples = 10;
  cfg.seed = 3;
  const json sj = to_json(conjecture1_scan(cfg));
  EXPECT_TRUE(sj.at("pass").get<bool>());
  EXPECT_EQ(sj.at("seed").get<uint64_t>(), 3u);
}

TEST(serialization, json_dump_is_deterministic) {
  std::mt19937_64 rng(7);
  const BlochState s = random_mixed_state(rng);
  EXPECT_EQ(to_json(s).dump(), to_json(s).dump());
  const BlochState round = state_from_json(json::parse(to_json(s).dump()));
  EXPECT_NEAR((round.W - s.W).cwiseAbs().maxCoeff(), 0.0, 0.0);  // exact round trip
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>
#include <string>

#include "cobit/calculus/certify.hpp"
#include "cobit/calculus/prove.hpp"
#include "cobit/calculus/rules.hpp"

using namespace cobit::calculus;

namespace {

Derivation derive(const std::string& lhs, const std::string& rhs, ProveOptions opts = {}) {
  return prove(parse_resources(lhs), parse_resources(rhs), opts);
}

ProveOptions with_cat(const std::string& budget) {
  ProveOptions o;
  o.catalyst_budget = parse_resources(budget);
  return o;
}

}  // namespace

TEST_CASE("rule database is well formed") {
  const auto& db = rule_db();
  CHECK(db.size() == 16);
  std::set<std::string> ids;
  int simulable = 0;
  for (const ConversionRule& r : db) {
    CHECK(ids.insert(r.id).second);  // ids are unique
    CHECK_FALSE(r.lhs.empty());
    CHECK_FALSE(r.rhs.empty());
    CHECK_FALSE(r.source.empty());
    if (!r.protocol.empty()) ++simulable;
  }
  CHECK(simulable == 6);
  CHECK(rule_by_id("coherent-superdense-coding").protocol != "");
  CHECK_THROWS_AS(rule_by_id("no-such-rule"), std::invalid_argument);
}

TEST_CASE("rule json carries the simulable flag") {
  nlohmann::json j = rule_to_json(rule_by_id("coherent-teleportation"));
  CHECK(j["simulable"] == true);
  CHECK(j["id"] == "coherent-teleportation");
  CHECK(j.contains("lhs"));
  CHECK(j.contains("rhs"));
  CHECK(j.contains("catalyst"));
  nlohmann::json k = rule_to_json(rule_by_id("qubit-to-cobit"));
  CHECK(k["simulable"] == false);
}

TEST_CASE("single-step derivations") {
  Derivation d = derive("1 qubit-> + 1 ebit", "2 cobit->");
  CHECK(d.status == ProveStatus::Found);
  REQUIRE(d.steps.size() == 1);
  CHECK(d.steps[0].rule_id == "coherent-superdense-coding");
  CHECK_FALSE(d.used_catalysis);
  CHECK_FALSE(d.used_asymptotic);
}

TEST_CASE("reflexivity and weakening") {
  // anything derives itself in zero steps
  Derivation d = derive("1 ebit + 1 cnot", "1 ebit + 1 cnot");
  CHECK(d.status == ProveStatus::Found);
  CHECK(d.steps.empty());
  // and extra resources on the left are allowed to go unused
  Derivation w = derive("2 ebit + 1 qubit->", "1 ebit");
  CHECK(w.status == ProveStatus::Found);
  CHECK(w.steps.empty());
}

TEST_CASE("multi-step derivations chain rules") {
  // qubit -> cobit -> cbit needs two rules
  Derivation d = derive("1 qubit->", "1 cbit->");
  CHECK(d.status == ProveStatus::Found);
  CHECK(d.steps.size() == 2);

  // teleportation from classical pieces: 2 cbit + ebit >= qubit
  Derivation t = derive("2 cbit-> + 1 ebit", "1 qubit->");
  CHECK(t.status == ProveStatus::Found);
}

TEST_CASE("derivations the database must refuse") {
  CHECK(derive("1 ebit", "1 cbit->").status == ProveStatus::NotFound);
  CHECK(derive("1 cbit->", "1 ebit").status == ProveStatus::NotFound);
  CHECK(derive("1 cbit->", "1 cobit->").status == ProveStatus::NotFound);
  CHECK(derive("1 cobit->", "1 qubit->").status == ProveStatus::NotFound);
}

TEST_CASE("catalytic derivations flag the borrowed budget") {
  // teleportation needs its ebit catalyst to convert cobits back
  Derivation bare = derive("2 cobit->", "1 qubit-> + 1 ebit");
  CHECK(bare.status == ProveStatus::NotFound);

  Derivation cat = derive("2 cobit->", "1 qubit-> + 1 ebit", with_cat("1 ebit"));
  CHECK(cat.status == ProveStatus::Found);
  CHECK(cat.used_catalysis);

  // an unnecessary budget is reported as unused
  Derivation easy = derive("1 qubit-> + 1 ebit", "2 cobit->", with_cat("1 ebit"));
  CHECK(easy.status == ProveStatus::Found);
  CHECK_FALSE(easy.used_catalysis);
}

TEST_CASE("asymptotic rules fire only when enabled") {
  Derivation off = derive("1 cbit-> + 1 ebit", "1 remote-qubit");
  CHECK(off.status == ProveStatus::NotFound);

  ProveOptions asy;
  asy.allow_asymptotic = true;
  Derivation on = derive("1 cbit-> + 1 ebit", "1 remote-qubit", asy);
  CHECK(on.status == ProveStatus::Found);
  CHECK(on.used_asymptotic);
}

TEST_CASE("swap and cnot interconvert catalytically") {
  Derivation fwd = derive("1 swap", "2 cnot", with_cat("3 ebit"));
  CHECK(fwd.status == ProveStatus::Found);
  Derivation bwd = derive("2 cnot", "1 swap", with_cat("3 ebit"));
  CHECK(bwd.status == ProveStatus::Found);
}

TEST_CASE("equality means derivations in both directions") {
  EqualityResult eq = check_equality(parse_resources("2 cobit->"),
                                     parse_resources("1 qubit-> + 1 ebit"),
                                     with_cat("1 ebit"));
  CHECK(eq.equal);
  CHECK(eq.forward.status == ProveStatus::Found);
  CHECK(eq.backward.status == ProveStatus::Found);

  EqualityResult neq = check_equality(parse_resources("1 qubit->"),
                                      parse_resources("1 cbit->"), ProveOptions{});
  CHECK_FALSE(neq.equal);
  CHECK(neq.forward.status == ProveStatus::Found);
  CHECK(neq.backward.status == ProveStatus::NotFound);
}

TEST_CASE("search caps report honestly") {
  ProveOptions tiny;
  tiny.max_states = 2;
  Derivation d = derive("4 qubit-> + 4 ebit", "8 cbit->", tiny);
  CHECK(d.status == ProveStatus::SearchCapped);

  ProveOptions shallow;
  shallow.max_depth = 1;
  // needs two steps, so a depth-1 search cannot find it
  Derivation s = derive("1 qubit->", "1 cbit->", shallow);
  CHECK(s.status == ProveStatus::SearchCapped);
}

TEST_CASE("option validation") {
  ProveOptions deep;
  deep.max_depth = 64;
  CHECK_THROWS_AS(derive("1 ebit", "1 ebit", deep), std::invalid_argument);
  ProveOptions none;
  none.max_states = 0;
  CHECK_THROWS_AS(derive("1 ebit", "1 ebit", none), std::invalid_argument);
}

TEST_CASE("derivation steps replay as valid multiset rewrites") {
  Derivation d = derive("2 cobit->", "1 qubit-> + 1 ebit", with_cat("1 ebit"));
  REQUIRE(d.status == ProveStatus::Found);
  ResourceVector state = parse_resources("2 cobit->") + parse_resources("1 ebit");
  for (const DerivationStep& step : d.steps) {
    CHECK(state == step.before);
    const ConversionRule& rule = rule_by_id(step.rule_id);
    CHECK(state.contains(rule.lhs + rule.catalyst));
    state = state - rule.lhs + rule.rhs;
    CHECK(state == step.after);
  }
  CHECK(state.contains(parse_resources("1 qubit-> + 1 ebit") + parse_resources("1 ebit")));
}

TEST_CASE("derivation json shape") {
  Derivation d = derive("1 qubit-> + 1 ebit", "2 cobit->");
  nlohmann::json j = derivation_to_json(d);
  CHECK(j["status"] == "found");
  CHECK(j["steps"].size() == 1);
  CHECK(j["steps"][0]["rule"] == "coherent-superdense-coding");
  CHECK(j["used_catalysis"] == false);
  CHECK(j.contains("states_explored"));
}

TEST_CASE("every simulable rule certifies against its protocol") {
  for (const CertificationResult& r : certify_all_simulable(2024)) {
    INFO(r.rule_id, ": ", r.detail);
    CHECK(r.passed);
    CHECK(r.fidelity >= 1.0 - 1e-9);
  }
}

TEST_CASE("certification is seed to seed deterministic") {
  CertificationResult a = certify_rule_by_simulation(rule_by_id("coherent-teleportation"), 7);
  CertificationResult b = certify_rule_by_simulation(rule_by_id("coherent-teleportation"), 7);
  CHECK(a.passed);
  CHECK(a.fidelity == b.fidelity);
}

TEST_CASE("rules without protocols refuse certification") {
  CHECK_THROWS_AS(certify_rule_by_simulation(rule_by_id("qubit-to-cobit"), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      certify_rule_by_simulation(rule_by_id("coherent-remote-state-preparation"), 1),
      std::invalid_argument);
}

#include "cobit/calculus/rules.hpp"

#include <stdexcept>

namespace cobit::calculus {

namespace {

ConversionRule make_rule(std::string id, const std::string& lhs, const std::string& rhs,
                         const std::string& catalyst, bool asymptotic, std::string protocol,
                         std::string source) {
  ConversionRule r;
  r.id = std::move(id);
  r.lhs = parse_resources(lhs);
  r.rhs = parse_resources(rhs);
  r.catalyst = parse_resources(catalyst);
  r.asymptotic = asymptotic;
  r.protocol = std::move(protocol);
  r.source = std::move(source);
  return r;
}

std::vector<ConversionRule> build_db() {
  std::vector<ConversionRule> db;

  db.push_back(make_rule(
      "qubit-to-cobit", "1 qubit->", "1 cobit->", "0", false, "",
      "copy the sender's basis onto a fresh qubit with a local CNOT and send the copy"));

  db.push_back(make_rule(
      "cobit-to-cbit", "1 cobit->", "1 cbit->", "0", false, "cobit-to-cbit",
      "let the sender's retained copy decohere into the environment"));

  db.push_back(make_rule(
      "coherent-superdense-coding", "1 qubit-> + 1 ebit", "2 cobit->", "0", false,
      "coherent-superdense-coding",
      "superdense coding run on coherent inputs copies both message qubits to the receiver"));

  db.push_back(make_rule(
      "coherent-teleportation", "2 cobit->", "1 qubit-> + 1 ebit", "1 ebit", false,
      "coherent-teleportation",
      "teleportation with coherently retained corrections; both message registers "
      "end up as shared Bell pairs, one repaying the borrowed pair"));

  db.push_back(make_rule(
      "cnot-to-coherent-bidirectional", "1 cnot + 1 ebit", "1 cobit-> + 1 cobit<-", "0",
      false, "cnot-to-coherent-bidirectional",
      "one nonlocal CNOT on locally encoded Bell halves signals one coherent bit each way"));

  db.push_back(make_rule(
      "coherent-distributed-cnot", "1 cobit-> + 1 cobit<-", "1 cnot + 1 ebit", "1 ebit",
      false, "coherent-distributed-cnot",
      "a coherent classical channel each way applies a CNOT across parties and leaves "
      "a fresh Bell pair"));

  db.push_back(make_rule(
      "classical-gate-teleportation-cnot", "1 cbit-> + 1 cbit<- + 1 ebit", "1 cnot", "0",
      false, "",
      "gate teleportation: measure the Bell halves, exchange the outcomes, and apply "
      "Pauli corrections"));

  db.push_back(make_rule(
      "cnot-pair-to-swap", "2 cnot", "1 swap", "3 ebit", false, "",
      "turn both CNOTs into coherent channels, teleport a qubit each way through them, "
      "and exchange; the borrowed pairs are all regenerated"));

  db.push_back(make_rule(
      "swap-to-cnot-pair", "1 swap", "2 cnot", "3 ebit", false, "",
      "a swap exchanges qubits, superdense coding turns them into coherent channels, "
      "and each direction pair implements a CNOT returning the borrowed pairs"));

  db.push_back(make_rule(
      "swap-to-qubit-exchange", "1 swap", "1 qubit-> + 1 qubit<-", "0", false, "",
      "swapping a fresh local qubit on each side moves one qubit in each direction"));

  db.push_back(make_rule(
      "qubit-exchange-to-swap", "1 qubit-> + 1 qubit<-", "1 swap", "0", false, "",
      "ship one register across, swap locally, and ship the displaced register back"));

  db.push_back(make_rule(
      "classical-teleportation", "2 cbit-> + 1 ebit", "1 qubit->", "0", false, "",
      "standard teleportation: Bell measurement, two classical bits, Pauli correction"));

  db.push_back(make_rule(
      "cobit-to-ebit", "1 cobit->", "1 ebit", "0", false, "cobit-to-ebit",
      "feeding |+> to the coherent classical channel leaves a shared Bell pair"));

  db.push_back(make_rule(
      "classical-remote-state-preparation", "1 cbit-> + 1 ebit", "1 remote-qubit", "0",
      true, "",
      "in the many-copy limit one classical bit plus one shared pair prepares one "
      "known qubit state remotely"));

  db.push_back(make_rule(
      "coherent-remote-state-preparation", "1 cobit->", "1 remote-qubit", "0", true, "",
      "coherent remote state preparation regenerates its entanglement, leaving one "
      "coherent bit per prepared qubit in the many-copy limit"));

  db.push_back(make_rule(
      "qubit-to-remote-qubit", "1 qubit->", "1 remote-qubit", "0", false, "",
      "sending the prepared state itself through the qubit channel"));

  return db;
}

}  // namespace

const std::vector<ConversionRule>& rule_db() {
  static const std::vector<ConversionRule> db = build_db();
  return db;
}

const ConversionRule& rule_by_id(const std::string& id) {
  for (const ConversionRule& r : rule_db())
    if (r.id == id) return r;
  throw std::invalid_argument("unknown rule id: " + id);
}

nlohmann::json rule_to_json(const ConversionRule& rule) {
  return {{"id", rule.id},
          {"lhs", resource_vector_to_json(rule.lhs)},
          {"rhs", resource_vector_to_json(rule.rhs)},
          {"catalyst", resource_vector_to_json(rule.catalyst)},
          {"asymptotic", rule.asymptotic},
          {"simulable", !rule.protocol.empty()},
          {"protocol", rule.protocol},
          {"source", rule.source}};
}

}  // namespace cobit::calculus

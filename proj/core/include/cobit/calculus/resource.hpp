#pragma once

#include <boost/rational.hpp>
#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>

namespace cobit::calculus {

using Rational = boost::rational<long long>;

// Communication resources tracked by the calculus. Directional kinds carry
// an explicit arrow; ebits, remote qubits, and gates are symmetric tokens.
enum class KindTag {
  QubitFwd,
  QubitBwd,
  CbitFwd,
  CbitBwd,
  CobitFwd,
  CobitBwd,
  Ebit,
  RemoteQubit,
  GateCnot,
  GateSwap,
  GateNamed,
};

struct ResourceKind {
  KindTag tag = KindTag::Ebit;
  std::string name;  // only used for GateNamed

  auto operator<=>(const ResourceKind&) const = default;
};

ResourceKind qubit_fwd();
ResourceKind qubit_bwd();
ResourceKind cbit_fwd();
ResourceKind cbit_bwd();
ResourceKind cobit_fwd();
ResourceKind cobit_bwd();
ResourceKind ebit();
ResourceKind remote_qubit();
ResourceKind gate_cnot();
ResourceKind gate_swap();
ResourceKind gate_named(std::string name);

std::string to_string(const ResourceKind& k);
// Inverse of to_string; throws std::invalid_argument on unknown spellings.
ResourceKind kind_from_string(const std::string& s);

// Multiset of resources with nonnegative rational counts. Zero-count entries
// are never stored, so equal vectors compare equal structurally.
class ResourceVector {
 public:
  ResourceVector() = default;
  ResourceVector(std::initializer_list<std::pair<ResourceKind, Rational>> items);

  void add(const ResourceKind& k, const Rational& count);
  Rational count(const ResourceKind& k) const;
  bool empty() const { return counts_.empty(); }
  const std::map<ResourceKind, Rational>& counts() const { return counts_; }

  // True when every count in this vector is >= the other's (multiset order).
  bool contains(const ResourceVector& other) const;

  ResourceVector& operator+=(const ResourceVector& other);
  // Throws std::invalid_argument if subtraction would go negative.
  ResourceVector& operator-=(const ResourceVector& other);
  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) { return a += b; }
  friend ResourceVector operator-(ResourceVector a, const ResourceVector& b) { return a -= b; }

  ResourceVector scaled(const Rational& factor) const;

  bool operator==(const ResourceVector&) const = default;
  auto operator<=>(const ResourceVector&) const = default;

  std::string to_string() const;  // e.g. "2 cobit-> + 1 ebit"; "0" when empty

 private:
  std::map<ResourceKind, Rational> counts_;
};

// Parses expressions like "2 cobit-> + 1/2 ebit + 1 u:G". Each term is an
// optional nonnegative rational followed by a kind token. Parse errors carry
// the byte offset of the offending token.
ResourceVector parse_resources(const std::string& expr);

nlohmann::json resource_vector_to_json(const ResourceVector& v);
ResourceVector resource_vector_from_json(const nlohmann::json& j);

}  // namespace cobit::calculus

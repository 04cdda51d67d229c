#include "cobit/calculus/resource.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace cobit::calculus {

ResourceKind qubit_fwd() { return {KindTag::QubitFwd, {}}; }
ResourceKind qubit_bwd() { return {KindTag::QubitBwd, {}}; }
ResourceKind cbit_fwd() { return {KindTag::CbitFwd, {}}; }
ResourceKind cbit_bwd() { return {KindTag::CbitBwd, {}}; }
ResourceKind cobit_fwd() { return {KindTag::CobitFwd, {}}; }
ResourceKind cobit_bwd() { return {KindTag::CobitBwd, {}}; }
ResourceKind ebit() { return {KindTag::Ebit, {}}; }
ResourceKind remote_qubit() { return {KindTag::RemoteQubit, {}}; }
ResourceKind gate_cnot() { return {KindTag::GateCnot, {}}; }
ResourceKind gate_swap() { return {KindTag::GateSwap, {}}; }
ResourceKind gate_named(std::string name) { return {KindTag::GateNamed, std::move(name)}; }

std::string to_string(const ResourceKind& k) {
  switch (k.tag) {
    case KindTag::QubitFwd: return "qubit->";
    case KindTag::QubitBwd: return "qubit<-";
    case KindTag::CbitFwd: return "cbit->";
    case KindTag::CbitBwd: return "cbit<-";
    case KindTag::CobitFwd: return "cobit->";
    case KindTag::CobitBwd: return "cobit<-";
    case KindTag::Ebit: return "ebit";
    case KindTag::RemoteQubit: return "remote-qubit";
    case KindTag::GateCnot: return "cnot";
    case KindTag::GateSwap: return "swap";
    case KindTag::GateNamed: return "u:" + k.name;
  }
  throw std::invalid_argument("unknown resource kind");
}

ResourceKind kind_from_string(const std::string& s) {
  if (s == "qubit->") return qubit_fwd();
  if (s == "qubit<-") return qubit_bwd();
  if (s == "cbit->") return cbit_fwd();
  if (s == "cbit<-") return cbit_bwd();
  if (s == "cobit->") return cobit_fwd();
  if (s == "cobit<-") return cobit_bwd();
  if (s == "ebit") return ebit();
  if (s == "remote-qubit") return remote_qubit();
  if (s == "cnot") return gate_cnot();
  if (s == "swap") return gate_swap();
  if (s.rfind("u:", 0) == 0 && s.size() > 2) return gate_named(s.substr(2));
  throw std::invalid_argument("unknown resource kind: '" + s + "'");
}

ResourceVector::ResourceVector(std::initializer_list<std::pair<ResourceKind, Rational>> items) {
  for (const auto& [k, c] : items) add(k, c);
}

// Note: comparisons against Rational stay homogeneous (or go through
// numerator()) throughout; mixed rational/integer == is unusable here.
void ResourceVector::add(const ResourceKind& k, const Rational& count) {
  if (count.numerator() < 0)
    throw std::invalid_argument("resource counts must be nonnegative");
  if (count.numerator() == 0) return;
  auto it = counts_.find(k);
  if (it == counts_.end())
    counts_.emplace(k, count);
  else
    it->second += count;
}

Rational ResourceVector::count(const ResourceKind& k) const {
  auto it = counts_.find(k);
  return it == counts_.end() ? Rational(0) : it->second;
}

bool ResourceVector::contains(const ResourceVector& other) const {
  for (const auto& [k, c] : other.counts_)
    if (count(k) < c) return false;
  return true;
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  for (const auto& [k, c] : other.counts_) add(k, c);
  return *this;
}

ResourceVector& ResourceVector::operator-=(const ResourceVector& other) {
  for (const auto& [k, c] : other.counts_) {
    auto it = counts_.find(k);
    if (it == counts_.end() || it->second < c)
      throw std::invalid_argument("resource subtraction would go negative: " +
                                  cobit::calculus::to_string(k));
    it->second -= c;
    if (it->second.numerator() == 0) counts_.erase(it);
  }
  return *this;
}

ResourceVector ResourceVector::scaled(const Rational& factor) const {
  ResourceVector out;
  for (const auto& [k, c] : counts_) out.add(k, c * factor);
  return out;
}

namespace {
std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}
}  // namespace

std::string ResourceVector::to_string() const {
  if (counts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : counts_) {
    if (!first) os << " + ";
    first = false;
    os << rational_to_string(c) << ' ' << calculus::to_string(k);
  }
  return os.str();
}

namespace {

struct Token {
  std::string text;
  std::size_t pos = 0;
};

[[noreturn]] void parse_fail(const std::string& msg, std::size_t pos) {
  throw std::invalid_argument("parse error at offset " + std::to_string(pos) + ": " + msg);
}

std::vector<Token> tokenize(const std::string& expr) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < expr.size()) {
    if (std::isspace(static_cast<unsigned char>(expr[i]))) {
      ++i;
      continue;
    }
    if (expr[i] == '+') {
      tokens.push_back({"+", i});
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < expr.size() && !std::isspace(static_cast<unsigned char>(expr[i])) &&
           expr[i] != '+')
      ++i;
    tokens.push_back({expr.substr(start, i - start), start});
  }
  return tokens;
}

bool looks_numeric(const std::string& s) {
  return !s.empty() && std::isdigit(static_cast<unsigned char>(s[0]));
}

Rational parse_rational(const Token& t) {
  long long num = 0, den = 1;
  std::size_t i = 0;
  const std::string& s = t.text;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    num = num * 10 + (s[i] - '0');
    ++i;
  }
  if (i < s.size()) {
    if (s[i] != '/') parse_fail("malformed count '" + s + "'", t.pos);
    ++i;
    if (i >= s.size()) parse_fail("missing denominator in '" + s + "'", t.pos);
    den = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      den = den * 10 + (s[i] - '0');
      ++i;
    }
    if (i < s.size() || den == 0) parse_fail("malformed count '" + s + "'", t.pos);
  }
  return Rational(num, den);
}

}  // namespace

ResourceVector parse_resources(const std::string& expr) {
  std::vector<Token> tokens = tokenize(expr);
  ResourceVector out;
  if (tokens.empty()) parse_fail("empty resource expression", 0);
  if (tokens.size() == 1 && tokens[0].text == "0") return out;
  std::size_t i = 0;
  bool expect_term = true;
  while (i < tokens.size()) {
    if (tokens[i].text == "+") {
      if (expect_term) parse_fail("unexpected '+'", tokens[i].pos);
      expect_term = true;
      ++i;
      continue;
    }
    if (!expect_term) parse_fail("expected '+' between terms", tokens[i].pos);
    Rational count(1);
    if (looks_numeric(tokens[i].text)) {
      count = parse_rational(tokens[i]);
      ++i;
      if (i >= tokens.size() || tokens[i].text == "+")
        parse_fail("count without a resource kind", tokens[i - 1].pos);
    }
    ResourceKind kind;
    try {
      kind = kind_from_string(tokens[i].text);
    } catch (const std::invalid_argument& e) {
      parse_fail(e.what(), tokens[i].pos);
    }
    out.add(kind, count);
    expect_term = false;
    ++i;
  }
  if (expect_term) parse_fail("trailing '+'", expr.size());
  return out;
}

nlohmann::json resource_vector_to_json(const ResourceVector& v) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, c] : v.counts()) {
    if (c.denominator() == 1)
      out[to_string(k)] = c.numerator();
    else
      out[to_string(k)] = rational_to_string(c);
  }
  return out;
}

ResourceVector resource_vector_from_json(const nlohmann::json& j) {
  ResourceVector out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    ResourceKind kind = kind_from_string(it.key());
    if (it.value().is_number_integer()) {
      out.add(kind, Rational(it.value().get<long long>()));
    } else if (it.value().is_string()) {
      std::string s = it.value().get<std::string>();
      auto slash = s.find('/');
      if (slash == std::string::npos)
        out.add(kind, Rational(std::stoll(s)));
      else
        out.add(kind, Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))));
    } else {
      throw std::invalid_argument("resource counts must be integers or 'p/q' strings");
    }
  }
  return out;
}

}  // namespace cobit::calculus

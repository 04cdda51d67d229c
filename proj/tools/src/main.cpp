#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "cobit/calculus/certify.hpp"
#include "cobit/calculus/prove.hpp"
#include "cobit/calculus/rules.hpp"
#include "cobit/capacity/capacity.hpp"
#include "cobit/protocols/protocols.hpp"
#include "cobit/random.hpp"
#include "cobit/rsp.hpp"
#include "cobit/serialize.hpp"

namespace {

using nlohmann::json;

struct OutputOptions {
  bool pretty = false;
  std::string path;  // empty -> stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_flag("--pretty", out.pretty, "Indent the JSON output");
  cmd->add_option("-o,--output", out.path, "Write the JSON to a file instead of stdout");
}

int emit(const json& j, const OutputOptions& out) {
  std::string text = j.dump(out.pretty ? 2 : -1);
  text.push_back('\n');
  if (out.path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out.path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot open '" << out.path << "' for writing\n";
    return 64;
  }
  f << text;
  return 0;
}

cobit::Vec protocol_input(const std::string& mode, long long index, int dim,
                          std::uint64_t seed) {
  if (mode == "haar") {
    std::mt19937_64 rng = cobit::substream(seed, "protocol-input");
    return cobit::haar_vector(dim, rng);
  }
  if (mode == "basis") {
    if (index < 0 || index >= dim)
      throw CLI::ValidationError("--index", "basis index out of range for this protocol");
    cobit::Vec v = cobit::Vec::Zero(dim);
    v(index) = 1.0;
    return v;
  }
  throw CLI::ValidationError("--input", "expected 'basis' or 'haar'");
}

bool color_allowed() { return std::getenv("NO_COLOR") == nullptr; }

std::string mark(bool ok) {
  if (!color_allowed()) return ok ? "[PASS]" : "[FAIL]";
  return ok ? "\x1b[32m[PASS]\x1b[0m" : "\x1b[31m[FAIL]\x1b[0m";
}

int run_protocol(const std::string& name, const std::string& input_mode, long long index,
                 std::uint64_t seed, double pair_p, int copies, bool include_state,
                 const OutputOptions& out) {
  namespace proto = cobit::protocols;
  json extra = json::object();
  proto::Transcript t;

  if (name == "superdense") {
    t = proto::coherent_superdense_coding(protocol_input(input_mode, index, 4, seed));
  } else if (name == "teleport") {
    t = proto::coherent_teleportation(protocol_input(input_mode, index, 2, seed));
  } else if (name == "teleport-sdc") {
    t = proto::coherent_teleportation(protocol_input(input_mode, index, 2, seed),
                                      proto::CobitProvider::SuperdenseCoding);
  } else if (name == "cnot-bidirectional") {
    t = proto::cnot_to_coherent_bidirectional(protocol_input(input_mode, index, 4, seed));
  } else if (name == "distributed-cnot") {
    t = proto::coherent_distributed_cnot(protocol_input(input_mode, index, 4, seed));
  } else if (name == "cobit-to-cbit") {
    t = proto::cobit_to_cbit(protocol_input(input_mode, index, 2, seed));
  } else if (name == "cobit-to-ebit") {
    t = proto::cobit_to_ebit();
  } else if (name == "concentrate") {
    if (pair_p <= 0.0 || pair_p >= 1.0)
      throw CLI::ValidationError("--p", "the Schmidt weight must lie strictly in (0, 1)");
    cobit::Vec pair = cobit::Vec::Zero(4);
    pair(0) = std::sqrt(pair_p);
    pair(3) = std::sqrt(1.0 - pair_p);
    std::mt19937_64 rng = cobit::substream(seed, "concentrate");
    proto::ConcentrationResult res = proto::entanglement_concentrate(pair, copies, rng);
    extra["weight"] = res.weight;
    extra["probability"] = res.probability;
    extra["entropy_bits"] = res.entropy_bits;
    t = std::move(res.transcript);
  } else {
    throw CLI::ValidationError("protocol", "unknown protocol '" + name + "'");
  }

  t.seed = seed;
  json doc = cobit::protocols::transcript_to_json(t, include_state);
  for (auto& [k, v] : extra.items()) doc[k] = v;
  return emit(doc, out);
}

int run_rsp(int d, int n, std::uint64_t seed, const std::string& cover_kind, int retries,
            const std::string& cover_in, const std::string& cover_out, bool include_state,
            const OutputOptions& out) {
  namespace rsp = cobit::rsp;
  rsp::CoveringSet cover;
  if (!cover_in.empty()) {
    std::ifstream f(cover_in);
    if (!f) throw CLI::ValidationError("--cover-in", "cannot read '" + cover_in + "'");
    json j;
    f >> j;
    cover = rsp::covering_from_json(j);
  } else if (cover_kind == "pauli") {
    cover = rsp::pauli_cover();
    if (d != cover.d || (n != 0 && n != cover.n))
      throw CLI::ValidationError("--cover", "the Pauli covering fixes d=2 and n=4");
  } else if (cover_kind == "haar") {
    std::mt19937_64 rng = cobit::substream(seed, "rsp-cover");
    cover = rsp::sample_covering(d, n, rng);
  } else {
    throw CLI::ValidationError("--cover", "expected 'pauli' or 'haar'");
  }

  if (!cover_out.empty()) {
    std::ofstream f(cover_out, std::ios::binary);
    if (!f) throw CLI::ValidationError("--cover-out", "cannot write '" + cover_out + "'");
    f << rsp::covering_to_json(cover).dump() << '\n';
  }

  std::mt19937_64 input_rng = cobit::substream(seed, "rsp-input");
  cobit::Vec psi = cobit::haar_vector(cover.d, input_rng);

  rsp::RspResult result;
  int attempts = 0;
  for (int k = 0; k <= retries; ++k) {
    std::mt19937_64 rng = cobit::substream(seed, "rsp-round", static_cast<std::uint64_t>(k));
    result = rsp::run_coherent_rsp(psi, cover, rng);
    ++attempts;
    if (result.success) break;
  }
  result.transcript.seed = seed;

  rsp::RspAccount account = rsp::rsp_resource_account(cover);
  json doc{{"cover", {{"d", cover.d}, {"n", cover.n}, {"epsilon", cover.epsilon}}},
           {"attempts", attempts},
           {"success", result.success},
           {"fidelity", result.fidelity},
           {"fail_probability", result.fail_probability},
           {"account",
            {{"exact", account.exact},
             {"consumed", cobit::calculus::resource_vector_to_json(account.consumed)},
             {"produced", cobit::calculus::resource_vector_to_json(account.produced)},
             {"catalysts", cobit::calculus::resource_vector_to_json(account.catalysts)}}},
           {"transcript", cobit::protocols::transcript_to_json(result.transcript, include_state)}};
  return emit(doc, out);
}

int run_prove(const std::string& lhs_expr, const std::string& op, const std::string& rhs_expr,
              const std::string& cat_expr, bool asy, int depth, const OutputOptions& out) {
  namespace cal = cobit::calculus;
  cal::ResourceVector lhs = cal::parse_resources(lhs_expr);
  cal::ResourceVector rhs = cal::parse_resources(rhs_expr);
  cal::ProveOptions opts;
  opts.catalyst_budget = cal::parse_resources(cat_expr);
  opts.allow_asymptotic = asy;
  opts.max_depth = depth;

  if (op == ">=") {
    cal::Derivation d = cal::prove(lhs, rhs, opts);
    json doc{{"lhs", lhs.to_string()},
             {"op", op},
             {"rhs", rhs.to_string()},
             {"catalyst_budget", opts.catalyst_budget.to_string()},
             {"derivation", cal::derivation_to_json(d)}};
    int rc = emit(doc, out);
    if (rc != 0) return rc;
    switch (d.status) {
      case cal::ProveStatus::Found: return 0;
      case cal::ProveStatus::NotFound: return 1;
      case cal::ProveStatus::SearchCapped: return 2;
    }
    return 2;
  }
  if (op == "==") {
    cal::EqualityResult r = cal::check_equality(lhs, rhs, opts);
    json doc{{"lhs", lhs.to_string()},
             {"op", op},
             {"rhs", rhs.to_string()},
             {"catalyst_budget", opts.catalyst_budget.to_string()},
             {"equal", r.equal},
             {"forward", cal::derivation_to_json(r.forward)},
             {"backward", cal::derivation_to_json(r.backward)}};
    int rc = emit(doc, out);
    if (rc != 0) return rc;
    if (r.equal) return 0;
    bool capped = r.forward.status == cal::ProveStatus::SearchCapped ||
                  r.backward.status == cal::ProveStatus::SearchCapped;
    return capped ? 2 : 1;
  }
  throw CLI::ValidationError("op", "expected '>=' or '=='");
}

cobit::capacity::GateSpec load_gate(const std::string& spec) {
  namespace cap = cobit::capacity;
  if (spec == "cnot") return cap::cnot_spec();
  if (spec == "swap") return cap::swap_spec();
  if (spec == "identity") return cap::identity_spec();
  std::ifstream f(spec);
  if (!f)
    throw CLI::ValidationError("--gate",
                               "expected 'cnot', 'swap', 'identity', or a readable JSON file");
  json j;
  f >> j;
  return cap::gate_from_json(j);
}

int run_capacity(const std::string& gate_spec, double e, int members, int restarts,
                 int iterations, std::uint64_t seed, const std::vector<double>& grid,
                 bool solve_rate, const OutputOptions& out) {
  namespace cap = cobit::capacity;
  cap::GateSpec gate = load_gate(gate_spec);
  cap::DeltaChiOptions opts;
  opts.members = members;
  opts.restarts = restarts;
  opts.max_iterations = iterations;
  opts.seed = seed;

  if (!grid.empty()) {
    cap::ConcavityReport rep = cap::concavity_scan(gate, grid, opts);
    json doc{{"gate", gate.name},
             {"grid", rep.grid},
             {"values", rep.values},
             {"worst_violation", rep.worst_violation}};
    return emit(doc, out);
  }
  if (solve_rate) {
    cap::QeResult r = cap::solve_qe(gate, e, opts);
    json doc{{"gate", gate.name},
             {"e", e},
             {"q", r.q},
             {"residual", r.residual},
             {"status", r.status}};
    return emit(doc, out);
  }
  cap::DeltaChiResult r = cap::delta_chi_e(gate, e, opts);
  json doc{{"gate", gate.name},
           {"e", e},
           {"value", r.value},
           {"entanglement", r.entanglement},
           {"status", r.status}};
  return emit(doc, out);
}

int run_rules(const OutputOptions& out) {
  json doc = json::array();
  for (const auto& rule : cobit::calculus::rule_db())
    doc.push_back(cobit::calculus::rule_to_json(rule));
  return emit(doc, out);
}

int run_selftest(std::uint64_t seed) {
  namespace cal = cobit::calculus;
  bool all_ok = true;
  auto report = [&](bool ok, const std::string& line) {
    all_ok = all_ok && ok;
    std::cout << mark(ok) << ' ' << line << '\n';
  };

  for (const cal::ConversionRule& rule : cal::rule_db()) {
    if (rule.protocol.empty()) continue;
    cal::CertificationResult res = cal::certify_rule_by_simulation(rule, seed);
    std::string identity = rule.lhs.to_string() + " >= " + rule.rhs.to_string();
    if (!rule.catalyst.empty()) identity += " (cat " + rule.catalyst.to_string() + ")";
    report(res.passed, identity + (res.passed ? "" : "  -- " + res.detail));
  }

  {
    std::mt19937_64 rng = cobit::substream(seed, "selftest-rsp");
    cobit::rsp::CoveringSet cover = cobit::rsp::pauli_cover();
    cobit::Vec psi = cobit::haar_vector(2, rng);
    cobit::rsp::RspResult r = cobit::rsp::run_coherent_rsp(psi, cover, rng);
    report(r.success && r.fidelity > 1.0 - 1e-9 && r.fail_probability < 1e-12,
           "2 cobit-> >= 1 remote-qubit + 1 ebit (cat 1 ebit)");
  }

  {
    cal::ProveOptions opts;
    opts.catalyst_budget = cal::parse_resources("1 ebit");
    cal::EqualityResult eq = cal::check_equality(cal::parse_resources("2 cobit->"),
                                                 cal::parse_resources("1 qubit-> + 1 ebit"),
                                                 opts);
    report(eq.equal, "2 cobit-> == 1 qubit-> + 1 ebit (cat 1 ebit)");
    cal::Derivation refuse =
        cal::prove(cal::parse_resources("1 ebit"), cal::parse_resources("1 cbit->"));
    report(refuse.status == cal::ProveStatus::NotFound,
           "1 ebit >= 1 cbit-> correctly refused");
  }

  std::cout << (all_ok ? "selftest: all checks passed" : "selftest: FAILURES above") << '\n';
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale laboratory for coherent classical communication protocols"};
  app.require_subcommand(1);
  app.set_config("--config");

  // protocol run <name> ...
  CLI::App* protocol = app.add_subcommand("protocol", "Run a laboratory protocol");
  CLI::App* prun = protocol->add_subcommand("run", "Execute one protocol and print its transcript");
  std::string proto_name;
  std::string input_mode = "basis";
  long long basis_index = 0;
  std::uint64_t proto_seed = 1;
  double pair_p = 0.7;
  int copies = 4;
  bool proto_state = false;
  OutputOptions proto_out;
  prun->add_option("name", proto_name,
                   "superdense | teleport | teleport-sdc | cnot-bidirectional | "
                   "distributed-cnot | cobit-to-cbit | cobit-to-ebit | concentrate")
      ->required();
  prun->add_option("--input", input_mode, "Input preparation: basis or haar")
      ->check(CLI::IsMember({"basis", "haar"}));
  prun->add_option("--index", basis_index, "Basis-state index when --input basis");
  prun->add_option("--seed", proto_seed, "Seed for all randomness in this run");
  prun->add_option("--p", pair_p, "Schmidt weight of the pair for 'concentrate'");
  prun->add_option("--copies", copies, "IID copies for 'concentrate' (2..10)");
  prun->add_flag("--state", proto_state, "Include the final state vector in the output");
  add_output_flags(prun, proto_out);

  // rsp run ...
  CLI::App* rsp_cmd = app.add_subcommand("rsp", "Coherent remote state preparation");
  CLI::App* rrun = rsp_cmd->add_subcommand("run", "Prepare a seeded random state remotely");
  int rsp_d = 2;
  int rsp_n = 0;
  std::uint64_t rsp_seed = 1;
  std::string cover_kind = "pauli";
  int retries = 8;
  std::string cover_in, cover_out;
  bool rsp_state = false;
  OutputOptions rsp_out;
  rrun->add_option("--d", rsp_d, "Dimension of the state to prepare");
  rrun->add_option("--n", rsp_n, "Number of covering unitaries (haar cover)");
  rrun->add_option("--seed", rsp_seed, "Seed for all randomness in this run");
  rrun->add_option("--cover", cover_kind, "Covering set: pauli or haar")
      ->check(CLI::IsMember({"pauli", "haar"}));
  rrun->add_option("--retries", retries, "Extra rounds allowed after a failure outcome");
  rrun->add_option("--cover-in", cover_in, "Load the covering set from a JSON file");
  rrun->add_option("--cover-out", cover_out, "Also write the covering set to a JSON file");
  rrun->add_flag("--state", rsp_state, "Include the final state vector in the output");
  add_output_flags(rrun, rsp_out);

  // prove ...
  CLI::App* prove_cmd = app.add_subcommand("prove", "Derive one resource inequality");
  std::string lhs_expr, op_expr, rhs_expr;
  std::string cat_expr = "0";
  bool asy = false;
  int depth = 12;
  OutputOptions prove_out;
  prove_cmd->add_option("lhs", lhs_expr, "e.g. \"1 qubit-> + 1 ebit\"")->required();
  prove_cmd->add_option("op", op_expr, "'>=' or '=='")->required();
  prove_cmd->add_option("rhs", rhs_expr, "e.g. \"2 cobit->\"")->required();
  prove_cmd->add_option("--cat", cat_expr, "Catalyst budget, e.g. \"1 ebit\"");
  prove_cmd->add_flag("--asy", asy, "Allow asymptotic rules");
  prove_cmd->add_option("--depth", depth, "Search depth limit (<= 32)");
  add_output_flags(prove_cmd, prove_out);

  // capacity ...
  CLI::App* cap_cmd = app.add_subcommand("capacity", "Holevo-gain optimizer for bipartite gates");
  std::string gate_spec = "cnot";
  double cap_e = 0.0;
  int members = 4;
  int restarts = 8;
  int iterations = 3000;
  std::uint64_t cap_seed = 1;
  std::vector<double> grid;
  bool solve_rate = false;
  OutputOptions cap_out;
  cap_cmd->add_option("--gate", gate_spec, "cnot | swap | identity | gate JSON file");
  cap_cmd->add_option("--e", cap_e, "Mean input entanglement allowance");
  cap_cmd->add_option("--m", members, "Ensemble members used by the optimizer");
  cap_cmd->add_option("--restarts", restarts, "Random restarts");
  cap_cmd->add_option("--iters", iterations, "Simplex iterations per restart");
  cap_cmd->add_option("--seed", cap_seed, "Optimizer seed");
  cap_cmd->add_option("--grid", grid, "Entanglement grid for a concavity scan")->delimiter(',');
  cap_cmd->add_flag("--qe", solve_rate, "Solve the entanglement-balanced rate equation");
  add_output_flags(cap_cmd, cap_out);

  // rules / selftest
  CLI::App* rules_cmd = app.add_subcommand("rules", "Print the conversion rule database");
  OutputOptions rules_out;
  add_output_flags(rules_cmd, rules_out);

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Certify the simulable rules end to end");
  std::uint64_t selftest_seed = 7;
  selftest_cmd->add_option("--seed", selftest_seed, "Seed for the certification inputs");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prun->parsed())
      return run_protocol(proto_name, input_mode, basis_index, proto_seed, pair_p, copies,
                          proto_state, proto_out);
    if (rrun->parsed())
      return run_rsp(rsp_d, rsp_n, rsp_seed, cover_kind, retries, cover_in, cover_out,
                     rsp_state, rsp_out);
    if (prove_cmd->parsed())
      return run_prove(lhs_expr, op_expr, rhs_expr, cat_expr, asy, depth, prove_out);
    if (cap_cmd->parsed())
      return run_capacity(gate_spec, cap_e, members, restarts, iterations, cap_seed, grid,
                          solve_rate, cap_out);
    if (rules_cmd->parsed()) return run_rules(rules_out);
    if (selftest_cmd->parsed()) return run_selftest(selftest_seed);
    std::cerr << "error: missing subcommand\n";
    return 64;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 64;
  }
}

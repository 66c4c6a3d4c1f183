#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "CLI11.hpp"
#include "epp/bicep.hpp"
#include "epp/choi.hpp"
#include "epp/clifford.hpp"
#include "epp/report.hpp"
#include "epp/states.hpp"
#include "epp/universality.hpp"

namespace {

// Circuits/tableaux that are well-formed but sized for a different register
// exit with 3; all other usage problems exit with 2.
struct DimensionMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// --gates accepts either a path to a gate file or an inline gate list.
std::string resolve_gates(const std::string& value) {
  if (!value.empty()) {
    std::ifstream probe(value);
    if (probe.good()) {
      std::ostringstream buf;
      buf << probe.rdbuf();
      return buf.str();
    }
  }
  return value;
}

epp::CliffordTableau load_tableau(const std::string& gates_value,
                                  const std::string& tableau_path, int total) {
  if (!tableau_path.empty()) {
    const epp::CliffordTableau t = epp::parse_tableau(read_file(tableau_path));
    if (t.qubits() != total) {
      throw DimensionMismatch("tableau acts on " + std::to_string(t.qubits()) +
                              " qubits but this run needs " +
                              std::to_string(total));
    }
    return t;
  }
  const std::string text = resolve_gates(gates_value);
  try {
    return epp::CliffordTableau::from_gates(total, epp::parse_gates(text, total));
  } catch (const std::invalid_argument&) {
    bool fits_wider_register = true;
    try {
      (void)epp::parse_gates(text, epp::PauliString::kMaxSlots);
    } catch (...) {
      fits_wider_register = false;
    }
    if (fits_wider_register) {
      throw DimensionMismatch("circuit references qubits outside the " +
                              std::to_string(total) + "-qubit register");
    }
    throw;
  }
}

struct OutputOpts {
  std::string format = "json";
  std::string output;
};

void add_output_opts(CLI::App* cmd, OutputOpts& opts) {
  cmd->add_option("--format", opts.format, "Report format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--output", opts.output,
                  "Write the report to this file instead of stdout");
}

void emit(const std::string& doc, const OutputOpts& opts) {
  if (opts.output.empty()) {
    std::cout << doc;
    return;
  }
  std::ofstream out(opts.output);
  if (!out) throw std::invalid_argument("cannot write file: " + opts.output);
  out << doc;
}

int resolve_threads(int flag_value) {
  if (const char* env = std::getenv("EPP_NOGO_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 64) {
      throw std::invalid_argument(
          "EPP_NOGO_THREADS must be an integer between 1 and 64");
    }
    return static_cast<int>(v);
  }
  return flag_value;
}

struct SimulateOpts {
  std::vector<std::string> inputs;
  std::string gates;
  std::string tableau;
  int assist = 0;
  bool breakdown = false;
  bool dense_oracle = false;
  OutputOpts out;
};

int run_simulate(const SimulateOpts& opts) {
  std::vector<epp::BellDiagonalState> inputs;
  inputs.reserve(opts.inputs.size());
  for (const auto& text : opts.inputs) inputs.push_back(epp::parse_state(text));
  const int n = static_cast<int>(inputs.size());
  if (n < 1) throw std::invalid_argument("at least one --in state is required");
  if (opts.assist < 0) throw std::invalid_argument("--assist must be >= 0");
  const int total = n + opts.assist;
  if (total < 2) {
    throw std::invalid_argument(
        "a protocol needs at least two pairs (one kept, one measured); "
        "got n + m = " + std::to_string(total));
  }
  const epp::CliffordTableau c = load_tableau(opts.gates, opts.tableau, total);

  epp::SimulateReport rep;
  rep.n = n;
  rep.m = opts.assist;
  rep.inputs = inputs;
  rep.include_breakdown = opts.breakdown;
  rep.outcome = epp::simulate_pauli_path(c, inputs, opts.assist);

  if (opts.dense_oracle) {
    if (total > 3) {
      throw std::invalid_argument(
          "--dense-oracle supports at most three total pairs");
    }
    std::vector<epp::Matrix> dense_inputs;
    dense_inputs.reserve(static_cast<std::size_t>(total));
    for (const auto& s : inputs) dense_inputs.push_back(epp::dense_state(s));
    for (int i = 0; i < opts.assist; ++i) {
      dense_inputs.push_back(epp::bell_projector(epp::Pauli::I));
    }
    const epp::ProtocolOutcome dense = epp::simulate_dense(c, dense_inputs);
    double delta =
        std::abs(dense.success_prob - rep.outcome.success_prob);
    if (rep.outcome.output_state && dense.output_state) {
      for (std::size_t i = 0; i < 4; ++i) {
        delta = std::max(delta, std::abs(rep.outcome.output_state->p[i] -
                                         dense.output_state->p[i]));
      }
    }
    rep.dense_oracle = dense;
    rep.max_abs_delta = delta;
  }
  emit(epp::render_simulate(rep, epp::parse_format(opts.out.format)), opts.out);
  return 0;
}

struct CheckOpts {
  std::string mode = "full";
  std::string gates;
  std::string tableau;
  int n = 0;
  int m = 0;
  OutputOpts out;
};

int run_check(const CheckOpts& opts) {
  const int total = opts.n + opts.m;
  const epp::CliffordTableau c = load_tableau(opts.gates, opts.tableau, total);
  const epp::CheckReport rep =
      opts.mode == "full" ? epp::check_universal_condition(c, opts.n, opts.m)
                          : epp::check_ordered_condition(c, opts.n, opts.m);
  emit(epp::render_check(rep, epp::parse_format(opts.out.format)), opts.out);
  return rep.passed ? 0 : 1;
}

struct SearchOpts {
  std::string mode = "full";
  int n = 2;
  int m = 0;
  int threads = 1;
  int probe_trials = 1000;
  uint64_t seed = 0;
  bool confirm_large = false;
  OutputOpts out;
};

int run_search(const SearchOpts& opts) {
  if (opts.n + opts.m >= 3 && !opts.confirm_large) {
    throw std::invalid_argument(
        "a three-qubit sweep visits 1451520 candidates; "
        "pass --confirm-large to proceed");
  }
  const epp::SearchReport rep = epp::exhaustive_no_go(
      opts.n, opts.m,
      opts.mode == "full" ? epp::CheckMode::Full : epp::CheckMode::Ordered,
      resolve_threads(opts.threads), opts.probe_trials, opts.seed);
  emit(epp::render_search(rep, epp::parse_format(opts.out.format)), opts.out);
  return 0;
}

struct ChoiTnormOpts {
  int n_max = 8;
  OutputOpts out;
};

int run_choi_tnorm(const ChoiTnormOpts& opts) {
  std::vector<epp::ChoiTableRow> rows;
  for (int n = 1; n <= opts.n_max; ++n) {
    const epp::BlochCorrelationSummary sweep = epp::t_norm_bruteforce(n);
    epp::ChoiTableRow row;
    row.n = n;
    row.t_norm_bruteforce = sweep.t_norm;
    row.t_norm_closed_form = epp::t_norm_closed_form(n);
    row.bound = sweep.bound;
    row.margin = sweep.margin;
    row.violated = sweep.violated;
    row.saturated = sweep.saturated;
    row.ppt_min_eigenvalue = epp::ppt_min_eigenvalue(epp::build_choi(n));
    rows.push_back(row);
  }
  emit(epp::render_choi_table(rows, epp::parse_format(opts.out.format)),
       opts.out);
  return 0;
}

struct ChoiPptOpts {
  int n = 1;
  OutputOpts out;
};

int run_choi_ppt(const ChoiPptOpts& opts) {
  const epp::ChoiOperator j = epp::build_choi(opts.n);
  epp::ChoiPptDoc doc;
  doc.report = epp::ppt_spectrum(j);
  doc.trace = j.trace;
  if (opts.n <= 4) {
    const epp::Matrix pt =
        epp::partial_transpose(epp::choi_dense(j), 2 * (opts.n + 1));
    Eigen::SelfAdjointEigenSolver<epp::Matrix> es(pt, Eigen::EigenvaluesOnly);
    doc.dense_min = es.eigenvalues().minCoeff();
    doc.dense_max = es.eigenvalues().maxCoeff();
  }
  emit(epp::render_choi_ppt(doc, epp::parse_format(opts.out.format)), opts.out);
  return 0;
}

struct ChoiFidelityOpts {
  std::vector<double> inputs;
  OutputOpts out;
};

int run_choi_fidelity(const ChoiFidelityOpts& opts) {
  if (opts.inputs.empty()) {
    throw std::invalid_argument("at least one --in fidelity is required");
  }
  epp::ChoiFidelityDoc doc;
  doc.inputs = opts.inputs;
  doc.output_fidelity = epp::ppt_output_fidelity(opts.inputs);
  doc.lower_bound_crosscheck = epp::fidelity_lower_bound(opts.inputs);
  emit(epp::render_choi_fidelity(doc, epp::parse_format(opts.out.format)),
       opts.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Verification toolkit for n-to-1 bilocal Clifford entanglement "
      "purification: simulation, universality checks, exhaustive no-go "
      "sweeps, and PPT-protocol analysis"};
  app.require_subcommand(1);

  SimulateOpts sim;
  CLI::App* sim_cmd = app.add_subcommand(
      "simulate", "Run one protocol on Bell-diagonal inputs");
  sim_cmd->add_option("--in", sim.inputs,
                      "Input state: iso:F or bds:pI,pX,pY,pZ (repeatable)");
  CLI::Option* sim_gates =
      sim_cmd->add_option("--gates", sim.gates,
                          "Gate list (inline or a file path); empty = identity");
  CLI::Option* sim_tab = sim_cmd->add_option(
      "--tableau", sim.tableau, "Tableau file (alternative to --gates)");
  sim_gates->excludes(sim_tab);
  sim_tab->excludes(sim_gates);
  sim_cmd->add_option("--assist", sim.assist,
                      "Perfect assist pairs appended after the inputs");
  sim_cmd->add_flag("--breakdown", sim.breakdown,
                    "Include the success-branch source decomposition");
  sim_cmd->add_flag("--dense-oracle", sim.dense_oracle,
                    "Cross-check against the dense simulator (<= 3 pairs)");
  add_output_opts(sim_cmd, sim.out);

  CheckOpts chk;
  CLI::App* chk_cmd = app.add_subcommand(
      "check", "Test one Clifford against a universality condition");
  chk_cmd->add_option("--mode", chk.mode, "full or ordered")
      ->check(CLI::IsMember({"full", "ordered"}));
  chk_cmd->add_option("--n", chk.n, "Kept-register pairs")->required();
  chk_cmd->add_option("--m", chk.m, "Perfect assist pairs");
  CLI::Option* chk_gates = chk_cmd->add_option(
      "--gates", chk.gates, "Gate list (inline or a file path)");
  CLI::Option* chk_tab = chk_cmd->add_option(
      "--tableau", chk.tableau, "Tableau file (alternative to --gates)");
  chk_gates->excludes(chk_tab);
  chk_tab->excludes(chk_gates);
  add_output_opts(chk_cmd, chk.out);

  SearchOpts srch;
  CLI::App* srch_cmd = app.add_subcommand(
      "search", "Sweep every symplectic class for condition passers");
  srch_cmd->add_option("--n", srch.n, "Kept-register pairs")->required();
  srch_cmd->add_option("--m", srch.m, "Perfect assist pairs");
  srch_cmd->add_option("--mode", srch.mode, "full or ordered")
      ->check(CLI::IsMember({"full", "ordered"}));
  srch_cmd->add_option("--threads", srch.threads, "Worker threads")
      ->check(CLI::Range(1, 64));
  srch_cmd->add_option("--probe-trials", srch.probe_trials,
                       "Random inputs per ordered-mode passer")
      ->check(CLI::Range(0, 1000000));
  srch_cmd->add_option("--seed", srch.seed, "Probe RNG seed");
  srch_cmd->add_flag("--confirm-large", srch.confirm_large,
                     "Allow the 1.45M-candidate three-qubit sweep");
  add_output_opts(srch_cmd, srch.out);

  CLI::App* choi_cmd =
      app.add_subcommand("choi", "Analyze the PPT protocol's dual operator");
  choi_cmd->require_subcommand(1);

  ChoiTnormOpts tno;
  CLI::App* tnorm_cmd = choi_cmd->add_subcommand(
      "tnorm", "Correlation 1-norm vs. the separability bound");
  tnorm_cmd->add_option("--n-max", tno.n_max, "Largest pair count")
      ->check(CLI::Range(1, 8));
  add_output_opts(tnorm_cmd, tno.out);

  ChoiPptOpts ppt;
  CLI::App* ppt_cmd = choi_cmd->add_subcommand(
      "ppt", "Partial-transpose spectrum of the dual operator");
  ppt_cmd->add_option("--n", ppt.n, "Input pairs")
      ->required()
      ->check(CLI::Range(1, 8));
  add_output_opts(ppt_cmd, ppt.out);

  ChoiFidelityOpts fid;
  CLI::App* fid_cmd = choi_cmd->add_subcommand(
      "fidelity", "Output-fidelity law of the PPT protocol");
  fid_cmd->add_option("--in", fid.inputs, "Input fidelity (repeatable)");
  add_output_opts(fid_cmd, fid.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 2;
  try {
    if (sim_cmd->parsed()) {
      code = run_simulate(sim);
    } else if (chk_cmd->parsed()) {
      code = run_check(chk);
    } else if (srch_cmd->parsed()) {
      code = run_search(srch);
    } else if (tnorm_cmd->parsed()) {
      code = run_choi_tnorm(tno);
    } else if (ppt_cmd->parsed()) {
      code = run_choi_ppt(ppt);
    } else if (fid_cmd->parsed()) {
      code = run_choi_fidelity(fid);
    }
  } catch (const DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  std::cerr << "elapsed_ms: " << elapsed.count() << "\n";
  return code;
}

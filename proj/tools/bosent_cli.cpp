// bosent: command-line front end for the bosonic entanglement toolkit.
//
// Exit codes: 0 success, 2 input error (flags, schema, invalid state),
// 3 resource cap exceeded (dense oracle too large).

#include <chrono>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bosent/criteria.hpp"
#include "bosent/dynamics.hpp"
#include "bosent/error.hpp"
#include "bosent/fock_space.hpp"
#include "bosent/io.hpp"
#include "bosent/negativity.hpp"
#include "bosent/states.hpp"

namespace {

using namespace bosent;
using nlohmann::json;

constexpr int kExitInput = 2;
constexpr int kExitCap = 3;

struct Options {
  std::optional<double> tolerance;
  std::string report_path;
  std::size_t oracle_cap = kDefaultExtendedCap;

  int n = -1;
  int modes = -1;
  int left = -1;
  std::string state_path;
  std::string method = "sector";
  double gamma = 0.0;
  double t_max = 0.0;
  int steps = 100;
  std::string out_path;
  std::string final_path;
  std::string kind;
  double a = 0.25;
  std::vector<double> weights{0.2, 0.2, 0.2, 0.2, 0.2};
  std::size_t rank = 1;
  std::uint64_t seed = 0;
};

/// Everything a command produces besides its stdout payload.
struct RunContext {
  TolerancePolicy policy;
  std::string input_digest;
  json payload;
};

int cmd_basis(const Options& o, RunContext& ctx) {
  const auto basis = build_basis(o.n, {o.modes, o.left});
  std::cout << "k\td1\td2\tblock\n";
  json rows = json::array();
  for (const auto& s : basis->sectors()) {
    std::cout << s.k << '\t' << s.d1 << '\t' << s.d2 << '\t' << s.dim() << '\n';
    rows.push_back({{"k", s.k}, {"d1", s.d1}, {"d2", s.d2}, {"block", s.dim()}});
  }
  std::cout << "total\t" << basis->dimension() << '\n';
  ctx.payload = {{"sectors", rows}, {"total", basis->dimension()}};
  return 0;
}

io::StateFile load_input(const Options& o, RunContext& ctx) {
  std::string text;
  try {
    text = io::read_text(o.state_path);
  } catch (const std::runtime_error& e) {
    throw InvalidInput(e.what());
  }
  ctx.input_digest = io::digest(text);
  return io::parse_state(text, ctx.policy);
}

int cmd_negativity(const Options& o, RunContext& ctx) {
  const auto rho = load_input(o, ctx).density();
  NegativityReport rep;
  if (o.method == "sector") {
    rep = negativity_general(rho, ctx.policy);
  } else if (o.method == "two-mode") {
    rep = negativity_two_mode(rho, ctx.policy);
  } else {
    rep = negativity_oracle(rho, o.oracle_cap, ctx.policy);
  }
  const std::string text = io::negativity_report_json(rep);
  std::cout << text;
  ctx.payload = json::parse(text);
  return 0;
}

int cmd_classify(const Options& o, RunContext& ctx) {
  const auto rho = load_input(o, ctx).density();
  const auto verdict = classify(rho, ctx.policy);
  const auto ppt = is_ppt(rho, ctx.policy);
  const std::string text = io::verdict_json(verdict, ppt);
  std::cout << text;
  ctx.payload = json::parse(text);
  return 0;
}

int cmd_evolve(const Options& o, RunContext& ctx) {
  if (o.steps < 1) throw InvalidInput("--steps must be >= 1");
  if (!(o.t_max >= 0.0)) throw InvalidInput("--t-max must be >= 0");
  const auto rho = load_input(o, ctx).density();
  std::vector<double> grid;
  for (int i = 0; i <= o.steps; ++i) grid.push_back(o.t_max * i / o.steps);
  const auto traj = negativity_trajectory(rho, o.gamma, grid, ctx.policy);
  const auto final_state = dephase_closed_form(rho, {o.gamma, o.t_max});
  const std::string final_path = o.final_path.empty() ? o.out_path + ".final.json" : o.final_path;
  io::write_text(o.out_path, io::trajectory_csv(traj));
  io::write_text(final_path, io::serialize_state(final_state));
  ctx.payload = {{"trajectory", o.out_path},
                 {"final_state", final_path},
                 {"points", traj.size()},
                 {"final_negativity", traj.back().negativity}};
  std::cout << ctx.payload.dump(2) << '\n';
  return 0;
}

int cmd_construct(const Options& o, RunContext& ctx) {
  std::string text;
  if (o.kind == "horodecki-embed") {
    const auto basis = build_basis(4, {4, 2});
    text = io::serialize_state(
        embed_qutrit_block(basis, horodecki_qutrit_state(o.a), o.weights, {}, ctx.policy));
  } else if (o.kind == "noon") {
    text = io::serialize_state(noon_state(o.n));
  } else {
    throw InvalidInput("unknown --kind " + o.kind);
  }
  io::write_text(o.out_path, text);
  ctx.payload = {{"kind", o.kind}, {"out", o.out_path}, {"digest", io::digest(text)}};
  std::cout << ctx.payload.dump(2) << '\n';
  return 0;
}

int cmd_random(const Options& o, RunContext& ctx) {
  const auto basis = build_basis(o.n, {o.modes, o.left});
  const std::string text = io::serialize_state(random_density(basis, o.rank, o.seed));
  io::write_text(o.out_path, text);
  ctx.payload = {{"out", o.out_path}, {"digest", io::digest(text)}};
  std::cout << ctx.payload.dump(2) << '\n';
  return 0;
}

json policy_json(const TolerancePolicy& p) {
  return {{"psd_floor", p.psd_floor},
          {"zero_threshold", p.zero_threshold},
          {"reconstruction_tol", p.reconstruction_tol},
          {"oracle_agreement_tol", p.oracle_agreement_tol},
          {"hermiticity_tol", p.hermiticity_tol},
          {"trace_tol", p.trace_tol},
          {"degeneracy_tol", p.degeneracy_tol}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mode-bipartite entanglement of fixed-N bosonic states"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--tolerance", o.tolerance, "Override every tolerance with one value")
      ->check(CLI::PositiveNumber);
  app.add_option("--report", o.report_path, "Write a JSON run report to this file");
  app.add_option("--oracle-cap", o.oracle_cap, "Max extended-space dimension for the dense oracle");

  auto* basis = app.add_subcommand("basis", "Print the sector table of a Fock basis");
  basis->add_option("--N", o.n, "Particle number")->required();
  basis->add_option("--M", o.modes, "Number of modes")->required();
  basis->add_option("--m", o.left, "Modes in the first party")->required();

  auto* neg = app.add_subcommand("negativity", "Negativity report of a state file");
  neg->add_option("--state", o.state_path, "State JSON file")->required();
  neg->add_option("--method", o.method, "sector | two-mode | oracle")
      ->check(CLI::IsMember({"sector", "two-mode", "oracle"}));

  auto* cls = app.add_subcommand("classify", "Separability verdict of a state file");
  cls->add_option("--state", o.state_path, "State JSON file")->required();

  auto* evolve = app.add_subcommand("evolve", "Dephasing trajectory of a state file");
  evolve->add_option("--state", o.state_path, "State JSON file")->required();
  evolve->add_option("--gamma", o.gamma, "Noise strength")->required()->check(CLI::NonNegativeNumber);
  evolve->add_option("--t-max", o.t_max, "Final time")->required()->check(CLI::NonNegativeNumber);
  evolve->add_option("--steps", o.steps, "Number of grid intervals")->check(CLI::PositiveNumber);
  evolve->add_option("--out", o.out_path, "Trajectory CSV")->required();
  evolve->add_option("--final", o.final_path, "Final state JSON (default <out>.final.json)");

  auto* construct = app.add_subcommand("construct", "Write a special state to a file");
  construct->add_option("--kind", o.kind, "horodecki-embed | noon")
      ->required()
      ->check(CLI::IsMember({"horodecki-embed", "noon"}));
  construct->add_option("--a", o.a, "Parameter of the two-qutrit PPT entangled block");
  construct->add_option("--weights", o.weights, "Sector weights k=0..4")->expected(5)->delimiter(',');
  construct->add_option("--N", o.n, "Particle number (noon)");
  construct->add_option("--out", o.out_path, "Output state file")->required();

  auto* rnd = app.add_subcommand("random", "Write a seeded random density matrix");
  rnd->add_option("--N", o.n, "Particle number")->required();
  rnd->add_option("--M", o.modes, "Number of modes")->required();
  rnd->add_option("--m", o.left, "Modes in the first party")->required();
  rnd->add_option("--rank", o.rank, "Rank of the Ginibre factor")->required();
  rnd->add_option("--seed", o.seed, "Generator seed")->required();
  rnd->add_option("--out", o.out_path, "Output state file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  RunContext ctx;
  ctx.policy = o.tolerance ? TolerancePolicy::uniform(*o.tolerance) : default_policy();
  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  std::string error;
  try {
    if (*basis) {
      code = cmd_basis(o, ctx);
    } else if (*neg) {
      code = cmd_negativity(o, ctx);
    } else if (*cls) {
      code = cmd_classify(o, ctx);
    } else if (*evolve) {
      code = cmd_evolve(o, ctx);
    } else if (*construct) {
      if (o.kind == "noon" && o.n < 1) throw InvalidInput("--kind noon needs --N >= 1");
      code = cmd_construct(o, ctx);
    } else {
      code = cmd_random(o, ctx);
    }
  } catch (const CapExceeded& e) {
    error = e.what();
    code = kExitCap;
  } catch (const std::exception& e) {
    error = e.what();
    code = kExitInput;
  }
  if (!error.empty()) std::cerr << "error: " << error << '\n';

  if (!o.report_path.empty()) {
    std::ostringstream command;
    for (int i = 0; i < argc; ++i) command << (i ? " " : "") << argv[i];
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json report = {{"command", command.str()},
                   {"input_digest", ctx.input_digest},
                   {"exit_code", code},
                   {"payload", ctx.payload},
                   {"tolerance", policy_json(ctx.policy)},
                   {"duration_seconds", seconds}};
    if (!error.empty()) report["error"] = error;
    try {
      io::write_text(o.report_path, report.dump(2) + "\n");
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      if (code == 0) code = kExitInput;
    }
  }
  return code;
}

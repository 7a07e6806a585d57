// Experiment runner: loads a key=value config and a circuit file, builds the
// simulated world, runs it to termination (or budget), writes a transcript
// and a machine-readable summary, and exits nonzero when an enabled
// invariant check fails.
//
// Exit codes: 0 ok, 1 invariant violation, 2 invalid config, 3 liveness
// budget exhausted.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bobmpc/checks.hpp"
#include "bobmpc/config.hpp"
#include "bobmpc/protocols/mpc.hpp"
#include "bobmpc/sim/adversary.hpp"

using namespace bobmpc;

namespace {

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ok = false;
    return "";
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  ok = true;
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic protocol-stack simulator"};
  std::string config_path, circuit_path, out_dir = ".", checks_arg, seed_arg;
  bool quiet = false;
  app.add_option("--config", config_path, "key=value experiment config")->required();
  app.add_option("--circuit", circuit_path, "circuit file")->required();
  app.add_option("--seed", seed_arg, "seed override");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--check", checks_arg, "all|none|comma-separated check names");
  app.add_flag("--quiet", quiet, "suppress stdout report");
  CLI11_PARSE(app, argc, argv);

  bool ok = false;
  std::string cfg_text = read_file(config_path, ok);
  if (!ok) {
    std::cerr << "cannot read config: " << config_path << "\n";
    return 2;
  }
  RunConfig cfg;
  std::string err = parse_config(cfg_text, cfg);
  if (!err.empty()) {
    std::cerr << "config error: " << err << "\n";
    return 2;
  }
  if (const char* env = std::getenv("BOBMPC_SEED")) cfg.params.seed = std::strtoull(env, nullptr, 10);
  if (!seed_arg.empty()) cfg.params.seed = std::strtoull(seed_arg.c_str(), nullptr, 10);
  if (!checks_arg.empty()) cfg.checks = checks_arg;
  err = cfg.params.validate();
  if (!err.empty()) {
    std::cerr << "config error: " << err << "\n";
    return 2;
  }
  if (!adversary_known(cfg.adversary)) {
    std::cerr << "config error: unknown adversary '" << cfg.adversary << "'\n";
    return 2;
  }
  std::string corrupt_err;
  Mask corrupt = cfg.corrupt_set(&corrupt_err);
  if (!corrupt_err.empty()) {
    std::cerr << "config error: " << corrupt_err << "\n";
    return 2;
  }

  std::string cir_text = read_file(circuit_path, ok);
  if (!ok) {
    std::cerr << "cannot read circuit: " << circuit_path << "\n";
    return 2;
  }
  Circuit cir;
  if (!Circuit::parse(cir_text, cir, err)) {
    std::cerr << "circuit error: " << err << "\n";
    return 2;
  }
  if (cir.n != cfg.params.n) {
    std::cerr << "circuit error: circuit is for " << cir.n << " parties\n";
    return 2;
  }

  World world(cfg.params, make_adversary(cfg.adversary, corrupt, cfg.params));
  TagId root = world.root_tag(Kind::CirEval);
  Rng input_rng(cfg.params.seed ^ 0xabcdef12345678ULL);
  std::vector<Fe> inputs;
  for (int p = 0; p < cfg.params.n; ++p) inputs.push_back(input_rng.next_fe(world.field()));
  for (int p = 0; p < cfg.params.n; ++p)
    world.party(p).spawn<CirEvalInst>(root, &cir, inputs[static_cast<size_t>(p)]);

  RunResult res = world.run([&](const World& w) {
    for (int p = 0; p < w.params().n; ++p)
      if (mask_has(w.honest_mask(), p) && !w.party_killed(p)) return false;
    return true;
  });

  bool live = res.reason != RunResult::Reason::BudgetExhausted;
  auto checks = live ? run_checks(world, cfg.checks, &cir)
                     : std::vector<CheckResult>{};
  bool all_pass = true;
  for (const auto& c : checks) all_pass &= c.pass;

  std::filesystem::create_directories(out_dir);
  {
    std::ofstream ts(out_dir + "/transcript.txt", std::ios::binary);
    ts << world.export_transcript();
  }
  {
    std::ofstream sm(out_dir + "/summary.txt", std::ios::binary);
    sm << "config " << config_path << "\n";
    sm << "circuit " << circuit_path << "\n";
    sm << "seed " << cfg.params.seed << "\n";
    sm << "mode " << (cfg.params.mode == NetMode::Sync ? "sync" : "async") << "\n";
    sm << "adversary " << cfg.adversary << "\n";
    sm << "corrupt " << corrupt << "\n";
    sm << "events " << res.events << "\n";
    sm << "end_time " << res.end_time << "\n";
    sm << "stop " << (res.reason == RunResult::Reason::Stopped ? "terminated"
                      : res.reason == RunResult::Reason::Quiescent ? "quiescent"
                                                                   : "budget")
       << "\n";
    sm << "c_m " << cir.mul_count() << "\n";
    sm << "d_m " << cir.mul_depth() << "\n";
    for (int p = 0; p < cfg.params.n; ++p) {
      const auto* outs = world.party(p).outputs(root);
      sm << "party " << p;
      if (outs && !outs->empty()) {
        sm << " output " << std::get<std::uint64_t>(outs->front().value)
           << " at " << outs->front().time / cfg.params.delta;
      } else {
        sm << " output none";
      }
      sm << (mask_has(corrupt, p) ? " corrupt" : " honest") << "\n";
    }
    {
      const auto* outs = world.party(0).outputs(world.tags().find(root, Kind::Acs, 0));
      if (outs && !outs->empty())
        sm << "cs " << std::get<std::uint64_t>(outs->front().value) << "\n";
    }
    // message / field-element counters per protocol layer, fixed kind order
    for (int k = 0; k < World::kKindCount; ++k) {
      const auto& lc = world.counters()[static_cast<size_t>(k)];
      if (lc.messages == 0) continue;
      sm << "layer " << kind_name(static_cast<Kind>(k)) << " messages "
         << lc.messages << " field_elements " << lc.field_elements << "\n";
    }
    for (const auto& c : checks)
      sm << "check " << c.name << ' ' << (c.pass ? "pass" : "fail")
         << (c.detail.empty() ? "" : " " + c.detail) << "\n";
    sm << "ok " << (live && all_pass ? 1 : 0) << "\n";
  }

  if (!quiet) {
    std::cout << (live ? "run complete" : "liveness budget exhausted") << ", events="
              << res.events << ", end_time=" << res.end_time << "\n";
    for (const auto& c : checks)
      std::cout << "check " << c.name << ": " << (c.pass ? "pass" : "FAIL")
                << (c.detail.empty() ? "" : " (" + c.detail + ")") << "\n";
  }
  if (!live) return 3;
  return all_pass ? 0 : 1;
}

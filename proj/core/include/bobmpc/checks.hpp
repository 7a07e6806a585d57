#pragma once

#include <string>
#include <vector>

#include "bobmpc/circuit.hpp"
#include "bobmpc/sim/world.hpp"

namespace bobmpc {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

// Post-run invariant checks over a finished world. `which` is "all",
// "none", or a comma-separated subset of the known check names:
//   bc_agreement, ba_agreement, vss_commitment, acs_common, triples_mult,
//   one_then_zero, mpc_output, wire_degrees
std::vector<CheckResult> run_checks(const World& w, const std::string& which,
                                    const Circuit* cir = nullptr);

std::vector<std::string> check_names();

// Reconstructs the secret behind honest parties' share outputs for a value
// at `index` within the output fes vectors of `tag`; fails (returns false)
// if the honest shares do not fit one degree-<=t_s polynomial.
bool reconstruct_output_secret(const World& w, TagId tag, int index, Fe* out);

}  // namespace bobmpc

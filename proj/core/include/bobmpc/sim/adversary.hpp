#pragma once

#include <memory>
#include <string>
#include <vector>

#include "bobmpc/sim/world.hpp"

namespace bobmpc {

struct SendIntercept {
  Message msg;
  Time extra_delay = 0;
};

// Centralized Byzantine adversary. Corrupt parties run the honest code; the
// adversary rewrites their outgoing messages (substitute, drop, delay,
// redirect, inject) and may steer the common coin while its failure budget
// lasts. In Programmable scheduling mode it also picks message delays.
class Adversary {
 public:
  virtual ~Adversary() = default;

  Mask corrupt = 0;
  bool is_corrupt(PartyId p) const { return mask_has(corrupt, p); }

  // Rewrites one outgoing message of a corrupt sender. Default: unchanged.
  virtual void rewrite(World& w, const Message& m,
                       std::vector<SendIntercept>& out) {
    out.push_back({m, 0});
  }

  virtual bool want_coin_failure(World& w, TagId coin_tag) { return false; }
  virtual Fe coin_failure_bit(World& w, TagId coin_tag, PartyId p) {
    return static_cast<Fe>(p & 1);
  }

  // Only consulted under SchedKind::Programmable; must be in [1, max].
  virtual Time pick_delay(World& w, const Message& m, Time max_delay) {
    return 1 + static_cast<Time>(w.adv_rng().next_below(
                   static_cast<std::uint64_t>(max_delay)));
  }

  virtual std::string name() const { return "none"; }
};

// Strategy registry used by the CLI and the test suites. Known names:
//   none              no corruption effects (corrupt set may still be used
//                     by the harness to choose inputs)
//   passive           corrupt parties follow the protocol
//   silent            corrupt parties send nothing at all
//   crash_late        corrupt parties go silent after a configured time
//   split_value       corrupt broadcast senders send one value to even
//                     receivers and another to odd receivers
//   split_dealer      corrupt dealers deal rows from a second random
//                     bivariate polynomial to the upper half of the parties
//   selective_silence corrupt dealers send rows only to the lowest t_s+1
//                     honest parties
//   late_dealer       corrupt dealers delay every send by 4*delta
//   equivocate_star   corrupt dealers send different star announcements to
//                     different parties
//   drop_half         corrupt parties never send to the upper half of the
//                     party set
//   bad_triple        corrupt triple-sharing dealers offset the z component
//                     of every shared triple by one
//   coin_fail         corrupt scheduler forces coin failures while the
//                     failure budget lasts
//   tamper            corrupt parties add 1 to every field element they send
std::unique_ptr<Adversary> make_adversary(const std::string& name, Mask corrupt,
                                          const Params& params);

bool adversary_known(const std::string& name);
std::vector<std::string> adversary_names();

}  // namespace bobmpc

#pragma once

#include <functional>
#include <optional>

#include "bobmpc/bivar.hpp"
#include "bobmpc/protocols/agreement.hpp"
#include "bobmpc/stargraph.hpp"

namespace bobmpc {

// Shared machinery for the two polynomial-sharing protocols: the OK/NOK
// broadcast layer, the consistency graphs, the dealer's star search and the
// acceptance test. The derived protocol decides where pairwise common
// values come from and what the share-extraction paths are.
class SharingCoreInst : public Instance {
 public:
  SharingCoreInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId dealer,
                  int l_count, std::function<void()> notify);

  // Dealer-side input: l_count polynomials of degree <= t_s.
  void set_input(const std::vector<Poly>& polys);

  bool has_output() const { return out_shares_.has_value(); }
  const std::vector<Fe>& shares() const { return *out_shares_; }
  Time output_time() const { return out_time_; }
  // Own row polynomials when known (from the dealer or error-corrected).
  const std::vector<Poly>* rows() const {
    return rows_ ? &*rows_ : (oec_rows_ ? &*oec_rows_ : nullptr);
  }
  int branch() const { return branch_; }
  bool accepted() const { return accepted_; }
  const BaInst* gate() const { return ba_; }

 protected:
  // --- hooks the concrete protocol provides ---
  // Offsets from the anchor for: pairwise results public (phase III start),
  // i.e. the anchor of the OK/NOK broadcasts.
  virtual Time results_offset() const = 0;
  // The claimed common value of P_j at me, once available (wps-share or
  // exchanged point), used for the OK/NOK decision against own rows.
  virtual const std::vector<Fe>* common_from(PartyId j) const = 0;
  // Extraction for parties outside the qualified set, branch 0 over F and
  // branch 1 over F'. Called (repeatedly) once the branch is fixed.
  virtual void extract_outside(Mask from_set) = 0;

  void setup_core();                      // spawn BC/BA children and timers
  void handle_rows(const Body& body);     // dealer row message
  void try_ok_decision(PartyId j);        // schedule grid-aligned OK/NOK
  void emit_output(std::vector<Fe> shares);
  void core_timer(int which, int arg);    // returns handled timers
  void on_core_update();                  // graph / star / branch progress
  void resolve_branch();

  Time anchor_;
  PartyId dealer_;
  int l_count_;
  std::function<void()> notify_;

  // dealer state
  std::vector<SymBivar> qs_;
  ConsistencyGraph graph_d_reg_;
  ConsistencyGraph graph_d_any_;
  Mask banned_ = 0;
  bool dealer_pruned_ = false;
  bool star_sent_ = false;
  bool star_a_sent_ = false;

  // per-party state
  std::optional<std::vector<Poly>> rows_;
  std::optional<std::vector<Poly>> oec_rows_;
  std::vector<BcInst*> ok_bcs_;  // ordered pair (i,j) at i*n+j, i != j
  BcInst* star_bc_ = nullptr;
  BcInst* star_a_bc_ = nullptr;
  BaInst* ba_ = nullptr;
  ConsistencyGraph graph_reg_;
  ConsistencyGraph graph_any_;
  std::vector<std::optional<NokVal>> nok_reg_;  // by ordered pair
  Mask ok_decided_ = 0;
  Mask ok_scheduled_ = 0;
  bool accepted_ = false;
  bool accept_evaluated_ = false;
  int branch_ = -1;
  std::optional<StarWEF> star_wef_;
  std::optional<StarEF> star_ef_;
  bool star_a_valid_ = false;
  std::optional<MultiOec> oec_;
  Mask oec_from_ = 0;
  std::optional<std::vector<Fe>> out_shares_;
  Time out_time_ = -1;

  BcInst* ok_bc(PartyId i, PartyId j) {
    return ok_bcs_[static_cast<size_t>(i * rt_.params().n + j)];
  }
  Time grid_up(Time t) const { return rt_.schedule().grid_up(t); }

 private:
  void dealer_prune_and_star();
  void evaluate_acceptance();
  void on_pair_update(PartyId i, PartyId j);
};

// Weak polynomial sharing: pairwise consistency via direct point exchange.
// An honest dealer gives every party its shares (at exactly T_WPS in a
// synchronous run); a corrupt dealer only commits a subset.
class WpsInst : public SharingCoreInst {
 public:
  WpsInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId dealer,
          int l_count, std::function<void()> notify = nullptr)
      : SharingCoreInst(rt, tag, anchor, dealer, l_count, std::move(notify)) {}

  void start() override;
  void on_message(PartyId from, const Body& body) override;
  void on_timer(int which, int arg) override;

 protected:
  Time results_offset() const override { return 2 * rt_.schedule().delta; }
  const std::vector<Fe>* common_from(PartyId j) const override {
    return points_[static_cast<size_t>(j)] ? &*points_[static_cast<size_t>(j)]
                                           : nullptr;
  }
  void extract_outside(Mask from_set) override;

 private:
  std::vector<std::optional<std::vector<Fe>>> points_;
  bool pair_send_scheduled_ = false;
  bool pair_sent_ = false;
};

// Verifiable secret sharing: each party re-shares its row through its own
// weak-sharing instance; support sets of wps-shares let parties outside the
// qualified set rebuild their rows. Strong commitment in both modes.
class VssInst : public SharingCoreInst {
 public:
  VssInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId dealer,
          int l_count, std::function<void()> notify = nullptr)
      : SharingCoreInst(rt, tag, anchor, dealer, l_count, std::move(notify)) {}

  void start() override;
  void on_message(PartyId from, const Body& body) override;
  void on_timer(int which, int arg) override;

  const WpsInst* wps(PartyId j) const { return wps_[static_cast<size_t>(j)]; }

 protected:
  Time results_offset() const override {
    return rt_.schedule().delta + rt_.schedule().t_wps;
  }
  const std::vector<Fe>* common_from(PartyId j) const override {
    const WpsInst* w = wps_[static_cast<size_t>(j)];
    return w && w->has_output() ? &w->shares() : nullptr;
  }
  void extract_outside(Mask from_set) override;

 private:
  void on_wps_update();
  void finish_ss();

  std::vector<WpsInst*> wps_;
  bool wps_input_scheduled_ = false;
  bool wps_input_given_ = false;
  Mask ss_ = 0;
  bool ss_frozen_ = false;
};

}  // namespace bobmpc

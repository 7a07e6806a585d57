#pragma once

#include <array>

#include "bobmpc/protocols/acs.hpp"

namespace bobmpc {

// One Beaver multiplication: publicly reconstruct e = x-a and d = y-b via
// all-to-all share exchange plus online error correction, then the product
// sharing is local: [z] = d*e + e*[b] + d*[a] + [c].
class BeaverInst : public Instance {
 public:
  BeaverInst(PartyRuntime& rt, TagId tag, std::function<void()> notify = nullptr)
      : Instance(rt, tag), notify_(std::move(notify)) {}

  void set_input(Fe x_sh, Fe y_sh, Fe a_sh, Fe b_sh, Fe c_sh);
  void on_message(PartyId from, const Body& body) override;

  bool has_output() const { return out_.has_value(); }
  Fe z_share() const { return *out_; }
  Fe d_value() const { return d_; }
  Fe e_value() const { return e_; }

 private:
  void finish();

  std::function<void()> notify_;
  bool input_set_ = false;
  Fe a_sh_ = 0, b_sh_ = 0, c_sh_ = 0;
  std::optional<MultiOec> oec_;
  std::vector<std::pair<PartyId, std::vector<Fe>>> early_;
  Fe d_ = 0, e_ = 0;
  std::optional<Fe> out_;
};

// Turns 2d+1 independent shared triples into correlated ones: points on a
// (d, d, 2d)-degree triple of polynomials. First d+1 triples are copied,
// the remaining x/y points come from Lagrange combinations, their products
// from Beaver multiplications burning the remaining input triples.
class TripTransInst : public Instance {
 public:
  TripTransInst(PartyRuntime& rt, TagId tag, int d,
                std::function<void()> notify = nullptr)
      : Instance(rt, tag), d_(d), notify_(std::move(notify)) {}

  void set_input(const std::vector<std::array<Fe, 3>>& triples);  // 2d+1

  bool has_output() const { return done_; }
  int d() const { return d_; }
  // share of the transformed triple at position i (0-based, 2d+1 of them)
  std::array<Fe, 3> triple(int i) const {
    return {xs_[static_cast<size_t>(i)], ys_[static_cast<size_t>(i)],
            zs_[static_cast<size_t>(i)]};
  }
  const std::vector<Fe>& xs() const { return xs_; }
  const std::vector<Fe>& ys() const { return ys_; }
  const std::vector<Fe>& zs() const { return zs_; }

 private:
  void on_beaver();

  int d_;
  std::function<void()> notify_;
  std::vector<Fe> xs_, ys_, zs_;
  std::vector<BeaverInst*> beavers_;
  bool done_ = false;
};

// Verifiable triple sharing with supervised verification: the dealer shares
// L*(2t_s+1) triples, every party contributes verification triples through
// a common-subset instance, each supervisor's point of the transformed
// polynomials is re-multiplied and publicly compared. A failed comparison
// publicly exposes the suspected triple; a dealt non-multiplication triple
// forces the default all-zero output for that batch.
class TripShInst : public Instance {
 public:
  TripShInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId dealer, int l,
             std::function<void()> notify = nullptr)
      : Instance(rt, tag),
        anchor_(anchor),
        dealer_(dealer),
        l_(l),
        notify_(std::move(notify)) {}

  void start() override;
  // Dealer-side: supplies the multiplication triples to share. Each batch
  // needs 2t_s+1 triples; the vector is batch-major.
  void set_input(const std::vector<std::array<Fe, 3>>& triples);
  void on_message(PartyId from, const Body& body) override;
  void on_timer(int which, int arg) override;

  bool has_output() const { return emitted_; }
  Time output_time() const { return out_time_; }
  // 3L values: (a,b,c) share per batch.
  const std::vector<Fe>& out_shares() const { return out_; }
  Mask supervisors() const { return w_set_; }
  const AcsInst* acs() const { return acs_; }
  const VssInst* vss() const { return vss_; }

 private:
  void on_vss_done();
  void maybe_start_verification();
  void on_super_beaver();
  void on_gamma_done();
  void on_suspect_done();
  void finalize();
  void try_emit();
  int wl_index(int slot, int l) const { return slot * l_ + l; }

  Time anchor_;
  PartyId dealer_;
  int l_;
  std::function<void()> notify_;

  VssInst* vss_ = nullptr;
  AcsInst* acs_ = nullptr;
  std::vector<TripTransInst*> trans_;
  bool trans_started_ = false;

  Mask w_set_ = 0;
  std::vector<PartyId> w_list_;
  bool verification_started_ = false;
  // extended points: per batch, per party index, shares of X/Y/Z at alpha_j
  std::vector<std::vector<Fe>> ext_x_, ext_y_, ext_z_;
  std::vector<BeaverInst*> super_;  // |W| * L
  bool gamma_sent_ = false;
  std::optional<MultiOec> gamma_oec_;
  std::vector<std::pair<PartyId, std::vector<Fe>>> early_gamma_;
  std::vector<int> flagged_;  // indices into (slot, l) pairs
  bool suspects_sent_ = false;
  std::optional<MultiOec> suspect_oec_;
  std::vector<std::pair<PartyId, std::vector<Fe>>> early_suspect_;
  std::vector<bool> batch_bad_;
  bool finalized_ = false;
  std::vector<Fe> out_;
  bool emitted_ = false;
  Time out_time_ = -1;
};

// Preprocessing: n parallel triple-sharing instances, agreement on the
// first n-t_s successful providers, then L extraction rounds turn their
// triples into c_M fresh ones unknown to the adversary.
class PreprocInst : public Instance {
 public:
  PreprocInst(PartyRuntime& rt, TagId tag, Time anchor, int c_m,
              std::function<void()> notify = nullptr);

  void start() override;
  void on_timer(int which, int arg) override;

  bool has_output() const { return emitted_; }
  Time output_time() const { return out_time_; }
  // 3*c_M values: (a,b,c) share per triple.
  const std::vector<Fe>& out_shares() const { return out_; }
  Mask cs() const { return cs_; }
  int batches() const { return l_; }
  int yield_per_batch() const { return yield_; }
  const TripShInst* tripsh(PartyId j) const { return tripsh_[static_cast<size_t>(j)]; }

 private:
  void on_tripsh_update();
  void on_ba_update();
  void give_one(PartyId j);
  void try_extract();
  void on_trans_done();
  void try_emit();

  Time anchor_;
  int c_m_;
  int d_ = 0;
  int yield_ = 0;
  int l_ = 0;
  std::function<void()> notify_;
  std::vector<TripShInst*> tripsh_;
  std::vector<BaInst*> ba_;
  bool begun_ = false;
  Mask input_given_ = 0;
  bool zero_wave_ = false;
  bool cs_ready_ = false;
  Mask cs_ = 0;
  std::vector<PartyId> cs_list_;
  bool extracting_ = false;
  std::vector<TripTransInst*> trans_;
  bool ready_ = false;
  std::vector<Fe> out_;
  bool emitted_ = false;
  Time out_time_ = -1;
};

}  // namespace bobmpc

#pragma once

#include <functional>
#include <optional>

#include "bobmpc/protocols/broadcast.hpp"

namespace bobmpc {

struct GradedBit {
  int sigma = 0;  // 0/1, or 2 for the no-majority marker
  int grade = 0;  // 0, 1 or 2
  bool lambda() const { return sigma == 2; }
};

// Graded consensus from three Acast waves (input, vote, re-vote) with n-t
// quotas and set-justification checks on every accepted vote.
class VoteInst : public Instance {
 public:
  VoteInst(PartyRuntime& rt, TagId tag, int t,
           std::function<void()> notify = nullptr);

  void start() override;
  void set_input(int bit);

  const std::optional<GradedBit>& output() const { return out_; }

  // Harness access for transcript validation.
  Mask x_members() const { return x_members_; }
  Mask frozen_y() const { return y_frozen_mask_; }
  Mask frozen_z() const { return z_frozen_mask_; }

 private:
  void reevaluate();
  AcastInst* wave(int w, PartyId j) { return acasts_[static_cast<size_t>(w * rt_.params().n + j)]; }

  int t_;
  std::function<void()> notify_;
  std::vector<AcastInst*> acasts_;
  std::optional<int> input_;
  bool input_sent_ = false;

  // dynamic input set: member bit + claimed bit per member
  Mask x_members_ = 0;
  Mask x_bits_ = 0;
  bool x_frozen_ = false;
  Mask x_frozen_mask_ = 0;
  int a_bit_ = 0;

  Mask y_members_ = 0;  // accepted vote senders
  Mask y_abits_ = 0;
  bool y_frozen_ = false;
  Mask y_frozen_mask_ = 0;
  int b_bit_ = 0;

  Mask z_members_ = 0;
  Mask z_bbits_ = 0;
  bool z_frozen_ = false;
  Mask z_frozen_mask_ = 0;

  std::optional<GradedBit> out_;
};

// Idealized common coin: per-party values come from the world's coin
// oracle; the value is fetched through the network so a flip costs exactly
// c*delta in a synchronous run and is scheduler-delayed otherwise.
class CoinInst : public Instance {
 public:
  CoinInst(PartyRuntime& rt, TagId tag, std::function<void()> notify = nullptr)
      : Instance(rt, tag), notify_(std::move(notify)) {}

  void join();
  void on_message(PartyId from, const Body& body) override;
  void on_timer(int which, int arg) override;
  const std::optional<int>& output() const { return out_; }

 private:
  void fetch();

  std::function<void()> notify_;
  bool joined_ = false;
  std::optional<int> out_;
};

// Randomized agreement: iterations of (vote, coin, vote) plus a ready layer
// with t+1 relay and 2t+1 decision. A party stops opening new iterations
// once it has decided; the instance itself never self-terminates.
class AbaInst : public Instance {
 public:
  AbaInst(PartyRuntime& rt, TagId tag, int t,
          std::function<void()> notify = nullptr)
      : Instance(rt, tag), t_(t), notify_(std::move(notify)) {}

  void set_input(int bit);
  void on_message(PartyId from, const Body& body) override;

  const std::optional<int>& output() const { return out_; }
  Time output_time() const { return out_time_; }
  int iterations_started() const { return iter_; }

 private:
  void start_iteration();
  void step_iteration();
  void send_ready(int bit);

  int t_;
  std::function<void()> notify_;
  std::optional<int> input_;
  int cur_ = 0;
  int iter_ = 0;
  bool committed_ = false;
  bool ready_sent_ = false;
  Mask ready_masks_[2] = {0, 0};
  std::optional<int> out_;
  Time out_time_ = -1;

  VoteInst* vote1_ = nullptr;
  VoteInst* vote2_ = nullptr;
  CoinInst* coin_ = nullptr;
  int stage_ = 0;  // 0 idle, 1 vote1, 2 coin, 3 vote2
  GradedBit g1_{};
};

// Hybrid agreement: everyone broadcasts its bit, the regular outputs fix a
// common ABA input at anchor+T_BC, and the ABA decides.
class BaInst : public Instance {
 public:
  BaInst(PartyRuntime& rt, TagId tag, Time anchor, int t,
         std::function<void()> notify = nullptr)
      : Instance(rt, tag), anchor_(anchor), t_(t), notify_(std::move(notify)) {}

  void start() override;
  void set_input(int bit);

  const std::optional<int>& output() const { return out_; }
  Time output_time() const { return out_time_; }
  Time input_time() const { return input_time_; }
  std::optional<int> aba_input() const { return aba_input_; }

 private:
  void maybe_enter_aba();

  Time anchor_;
  int t_;
  std::function<void()> notify_;
  std::optional<int> input_;
  Time input_time_ = -1;
  std::vector<BcInst*> bcs_;
  AbaInst* aba_ = nullptr;
  std::optional<int> aba_input_;
  std::optional<int> out_;
  Time out_time_ = -1;
};

}  // namespace bobmpc

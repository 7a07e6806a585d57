#pragma once

#include "bobmpc/circuit.hpp"
#include "bobmpc/protocols/triples.hpp"

namespace bobmpc {

// End-to-end shared circuit evaluation: inputs committed through a common
// subset, triples from preprocessing, linear gates local, multiplication
// gates by Beaver (one delta per depth level in a synchronous run), public
// output reconstruction, and ready-message termination that kills every
// sub-protocol at this party.
class CirEvalInst : public Instance {
 public:
  CirEvalInst(PartyRuntime& rt, TagId tag, const Circuit* cir, Fe input,
              std::function<void()> notify = nullptr)
      : Instance(rt, tag), cir_(cir), input_(input), notify_(std::move(notify)) {}

  void start() override;
  void on_message(PartyId from, const Body& body) override;

  bool has_output() const { return out_.has_value(); }
  Fe output() const { return *out_; }
  Time output_time() const { return out_time_; }
  Mask cs() const { return acs_->has_output() ? acs_->cs() : 0; }
  const AcsInst* acs() const { return acs_; }
  const PreprocInst* preproc() const { return preproc_; }
  bool sent_ready() const { return ready_sent_; }
  std::optional<Fe> reconstructed() const { return y_; }

 private:
  void on_inputs_ready();
  void eval_gates();
  void on_y_share(PartyId from, const std::vector<Fe>& v);
  void send_ready(Fe y);

  const Circuit* cir_;
  Fe input_;
  std::function<void()> notify_;
  AcsInst* acs_ = nullptr;
  PreprocInst* preproc_ = nullptr;
  std::vector<std::optional<Fe>> wire_;
  size_t next_gate_ = 0;
  std::vector<BeaverInst*> mul_beavers_;
  std::vector<int> mul_out_wire_;
  int muls_spawned_ = 0;
  bool out_sent_ = false;
  std::optional<MultiOec> out_oec_;
  std::optional<Fe> y_;
  bool ready_sent_ = false;
  std::vector<std::pair<Fe, Mask>> ready_counts_;
  std::optional<Fe> out_;
  Time out_time_ = -1;
};

}  // namespace bobmpc

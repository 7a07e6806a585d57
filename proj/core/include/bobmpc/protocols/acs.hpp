#pragma once

#include "bobmpc/protocols/vss.hpp"

namespace bobmpc {

// Agreement on a common subset: n dealer-sharing instances gated by n
// agreement instances under the 1-then-0 input discipline. The subset is
// emitted together with every member's shares, no earlier than T_ACS on the
// local clock.
class AcsInst : public Instance {
 public:
  AcsInst(PartyRuntime& rt, TagId tag, Time anchor, int l_count,
          std::function<void()> notify = nullptr)
      : Instance(rt, tag),
        anchor_(anchor),
        l_count_(l_count),
        notify_(std::move(notify)) {}

  void start() override;
  void set_input(const std::vector<Poly>& polys);
  void on_timer(int which, int arg) override;

  bool has_output() const { return emitted_; }
  Mask cs() const { return cs_; }
  Time output_time() const { return out_time_; }
  // Shares of dealer j's polynomials (valid for j in cs once emitted).
  const std::vector<Fe>& shares_of(PartyId j) const {
    return vss_[static_cast<size_t>(j)]->shares();
  }
  const VssInst* vss(PartyId j) const { return vss_[static_cast<size_t>(j)]; }

 private:
  void on_vss_update();
  void on_ba_update();
  void give_one(PartyId j);
  void try_emit();

  Time anchor_;
  int l_count_;
  std::function<void()> notify_;
  std::vector<VssInst*> vss_;
  std::vector<BaInst*> ba_;
  bool begun_ = false;
  Mask input_given_ = 0;
  bool zero_wave_ = false;
  bool cs_ready_ = false;
  Mask cs_ = 0;
  bool emitted_ = false;
  Time out_time_ = -1;
};

}  // namespace bobmpc

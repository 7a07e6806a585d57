#pragma once

#include <functional>
#include <optional>

#include "bobmpc/sim/world.hpp"

namespace bobmpc {

// Bracha reliable broadcast: init/echo/ready with n-t and t+1 thresholds.
// Liveness only for an honest sender; agreement always.
class AcastInst : public Instance {
 public:
  AcastInst(PartyRuntime& rt, TagId tag, PartyId sender, int t,
            std::function<void()> notify = nullptr)
      : Instance(rt, tag), sender_(sender), t_(t), notify_(std::move(notify)) {}

  // Sender-side: feeds the input and sends init to everyone.
  void set_input(const Value& m);

  void on_message(PartyId from, const Body& body) override;

  const std::optional<Value>& output() const { return out_; }
  Time output_time() const { return out_time_; }

 private:
  void maybe_send_ready(const Value& v);

  PartyId sender_;
  int t_;
  std::function<void()> notify_;
  bool input_set_ = false;
  bool echoed_ = false;
  bool readied_ = false;
  std::vector<std::pair<Value, Mask>> echoes_;
  std::vector<std::pair<Value, Mask>> readies_;
  std::optional<Value> out_;
  Time out_time_ = -1;
};

// Phase-king agreement over opaque values, padded so every party outputs at
// exactly anchor + (12n-6)*delta on its local clock. In a synchronous run
// it is a t-secure SBA; elsewhere it only guarantees an output (possibly
// the bot marker) at the deadline.
class SbaInst : public Instance {
 public:
  SbaInst(PartyRuntime& rt, TagId tag, Time anchor, int t,
          std::function<void()> notify = nullptr);

  void start() override;
  void set_input(const Value& v);

  void on_message(PartyId from, const Body& body) override;
  void on_timer(int which, int arg) override;

  const std::optional<Value>& output() const { return out_; }

 private:
  int rounds() const { return 3 * (t_ + 1); }
  void round_send(int r);
  void round_close(int r);

  Time anchor_;
  int t_;
  std::function<void()> notify_;
  std::optional<Value> input_;
  Value cur_{};
  bool have_cur_ = false;
  bool failed_ = false;
  bool committed_ = false;
  // per round: distinct senders and value buckets
  std::vector<std::vector<std::pair<Value, Mask>>> buckets_;
  std::vector<Mask> senders_;
  std::vector<bool> closed_;
  // phase scratch
  Value strong_val_{};
  bool strong_ = false;
  std::optional<Value> out_;
};

// Broadcast with a fixed regular-mode deadline: the sender Acasts, at
// anchor+3*delta everyone feeds its Acast output (or bot) into an SBA, and
// at anchor+T_BC the regular output is fixed. A regular bot may later be
// upgraded once the Acast delivers (fallback mode).
class BcInst : public Instance {
 public:
  BcInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId sender, int t,
         std::function<void()> notify = nullptr);

  void start() override;
  void set_input(const Value& m);
  void on_timer(int which, int arg) override;

  // Regular output: engaged exactly at anchor+T_BC; monostate means bot.
  const std::optional<Value>& regular_output() const { return regular_; }
  Time regular_time() const { return regular_time_; }
  // Final output: regular if non-bot, else the fallback upgrade if any.
  std::optional<Value> final_output() const;
  bool fallback_used() const { return fallback_.has_value(); }
  Time fallback_time() const { return fallback_time_; }
  Time anchor() const { return anchor_; }

 private:
  void on_acast_update();

  Time anchor_;
  PartyId sender_;
  int t_;
  std::function<void()> notify_;
  AcastInst* acast_ = nullptr;
  SbaInst* sba_ = nullptr;
  std::optional<Value> regular_;
  Time regular_time_ = -1;
  std::optional<Value> fallback_;
  Time fallback_time_ = -1;
};

}  // namespace bobmpc

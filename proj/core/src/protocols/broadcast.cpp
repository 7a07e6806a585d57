#include "bobmpc/protocols/broadcast.hpp"

namespace bobmpc {

namespace {

// Adds `from` to the bucket of `v`; returns the bucket's sender count.
int bucket_add(std::vector<std::pair<Value, Mask>>& buckets, const Value& v,
               PartyId from) {
  for (auto& [val, mask] : buckets) {
    if (val == v) {
      mask |= mask_bit(from);
      return mask_count(mask);
    }
  }
  buckets.emplace_back(v, mask_bit(from));
  return 1;
}

}  // namespace

void AcastInst::set_input(const Value& m) {
  if (input_set_ || rt_.id() != sender_) return;
  input_set_ = true;
  rt_.send_all(tag_, Body{MsgKind::AcastInit, 0, 0, m});
}

void AcastInst::maybe_send_ready(const Value& v) {
  if (readied_) return;
  readied_ = true;
  rt_.send_all(tag_, Body{MsgKind::AcastReady, 0, 0, v});
}

void AcastInst::on_message(PartyId from, const Body& body) {
  int n = rt_.params().n;
  switch (body.kind) {
    case MsgKind::AcastInit: {
      if (from != sender_ || echoed_) return;
      echoed_ = true;
      rt_.send_all(tag_, Body{MsgKind::AcastEcho, 0, 0, body.value});
      return;
    }
    case MsgKind::AcastEcho: {
      int c = bucket_add(echoes_, body.value, from);
      if (c >= n - t_) maybe_send_ready(body.value);
      return;
    }
    case MsgKind::AcastReady: {
      int c = bucket_add(readies_, body.value, from);
      if (c >= t_ + 1) maybe_send_ready(body.value);
      if (c >= n - t_ && !out_) {
        out_ = body.value;
        out_time_ = rt_.now();
        rt_.log_output(tag_, OutputRec{0, *out_, {}, 0});
        if (notify_) notify_();
      }
      return;
    }
    default:
      return;
  }
}

namespace {
enum SbaTimer { kRoundSend = 1, kRoundClose = 2, kFinal = 3 };
}

SbaInst::SbaInst(PartyRuntime& rt, TagId tag, Time anchor, int t,
                 std::function<void()> notify)
    : Instance(rt, tag), anchor_(anchor), t_(t), notify_(std::move(notify)) {
  buckets_.resize(static_cast<size_t>(rounds()) + 1);
  senders_.assign(static_cast<size_t>(rounds()) + 1, 0);
  closed_.assign(static_cast<size_t>(rounds()) + 1, false);
}

void SbaInst::start() {
  Time d = rt_.schedule().delta;
  for (int r = 1; r <= rounds(); ++r) {
    rt_.set_timer(tag_, kRoundSend, r, anchor_ + (r - 1) * d);
    rt_.set_timer(tag_, kRoundClose, r, anchor_ + r * d);
  }
  rt_.set_timer(tag_, kFinal, 0, anchor_ + rt_.schedule().t_bgp);
}

void SbaInst::set_input(const Value& v) {
  if (input_.has_value()) return;
  input_ = v;
  if (!have_cur_) {
    cur_ = v;
    have_cur_ = true;
  }
}

void SbaInst::on_message(PartyId from, const Body& body) {
  if (body.kind != MsgKind::SbaRound) return;
  int r = body.b;
  if (r < 1 || r > rounds() || closed_[static_cast<size_t>(r)]) return;
  bool king_round = (r % 3) == 0;
  if (king_round && from != (r / 3) - 1) return;  // only the phase king
  if (!king_round && body.a == 0) {
    // "no strong candidate" marker: count the sender, no value bucket
    if (!mask_has(senders_[static_cast<size_t>(r)], from))
      senders_[static_cast<size_t>(r)] |= mask_bit(from);
    return;
  }
  if (mask_has(senders_[static_cast<size_t>(r)], from)) return;
  senders_[static_cast<size_t>(r)] |= mask_bit(from);
  bucket_add(buckets_[static_cast<size_t>(r)], body.value, from);
}

void SbaInst::round_send(int r) {
  if (!have_cur_) {
    cur_ = Value{};  // no input was provided in time; run on the bot marker
    have_cur_ = true;
  }
  int phase_pos = (r - 1) % 3;  // 0: all-send value, 1: all-send strong, 2: king
  if (phase_pos == 0) {
    rt_.send_all(tag_, Body{MsgKind::SbaRound, 1, r, cur_});
  } else if (phase_pos == 1) {
    rt_.send_all(tag_, Body{MsgKind::SbaRound, strong_ ? 1 : 0, r,
                            strong_ ? strong_val_ : Value{}});
  } else {
    int king = ((r / 3) - 1);
    if (rt_.id() == king)
      rt_.send_all(tag_, Body{MsgKind::SbaRound, 1, r, cur_});
  }
}

void SbaInst::round_close(int r) {
  closed_[static_cast<size_t>(r)] = true;
  int n = rt_.params().n;
  auto& bucket = buckets_[static_cast<size_t>(r)];
  int phase_pos = (r - 1) % 3;
  if (phase_pos == 0) {
    if (mask_count(senders_[static_cast<size_t>(r)]) < n - t_) failed_ = true;
    strong_ = false;
    const std::pair<Value, Mask>* best = nullptr;
    for (auto& b : bucket)
      if (!best || mask_count(b.second) > mask_count(best->second) ||
          (mask_count(b.second) == mask_count(best->second) && b.first < best->first))
        best = &b;
    if (best && mask_count(best->second) >= n - t_) {
      strong_ = true;
      strong_val_ = best->first;
    }
  } else if (phase_pos == 1) {
    if (mask_count(senders_[static_cast<size_t>(r)]) < n - t_) failed_ = true;
    const std::pair<Value, Mask>* best = nullptr;
    for (auto& b : bucket)
      if (!best || mask_count(b.second) > mask_count(best->second) ||
          (mask_count(b.second) == mask_count(best->second) && b.first < best->first))
        best = &b;
    committed_ = false;
    if (best) {
      int c = mask_count(best->second);
      if (c >= t_ + 1) cur_ = best->first;
      if (c >= n - t_) committed_ = true;
    }
  } else {
    if (!committed_ && !bucket.empty()) cur_ = bucket.front().first;
  }
}

void SbaInst::on_timer(int which, int arg) {
  switch (which) {
    case kRoundSend:
      round_send(arg);
      return;
    case kRoundClose:
      round_close(arg);
      return;
    case kFinal: {
      if (out_) return;
      out_ = failed_ || !have_cur_ ? Value{} : cur_;
      rt_.log_output(tag_, OutputRec{0, *out_, {}, failed_ ? 1 : 0});
      if (notify_) notify_();
      return;
    }
  }
}

namespace {
enum BcTimer { kSbaInput = 1, kRegular = 2 };
}

BcInst::BcInst(PartyRuntime& rt, TagId tag, Time anchor, PartyId sender, int t,
               std::function<void()> notify)
    : Instance(rt, tag),
      anchor_(anchor),
      sender_(sender),
      t_(t),
      notify_(std::move(notify)) {}

void BcInst::start() {
  World& w = rt_.world();
  Time d = rt_.schedule().delta;
  acast_ = rt_.spawn<AcastInst>(w.tag_child(tag_, Kind::Acast, 0), sender_, t_,
                                [this] { on_acast_update(); });
  // Timer registration order pins same-timestamp sequencing: the input
  // hand-off must run before the SBA's first round, and the regular-mode
  // decision after the SBA's final step.
  rt_.set_timer(tag_, kSbaInput, 0, anchor_ + 3 * d);
  sba_ = rt_.spawn<SbaInst>(w.tag_child(tag_, Kind::Sba, 0), anchor_ + 3 * d, t_);
  rt_.set_timer(tag_, kRegular, 0, anchor_ + rt_.schedule().t_bc);
}

void BcInst::set_input(const Value& m) { acast_->set_input(m); }

void BcInst::on_timer(int which, int) {
  if (which == kSbaInput) {
    sba_->set_input(acast_->output() ? *acast_->output() : Value{});
    return;
  }
  if (which == kRegular) {
    // SBA resolves its final value at this same timestamp, strictly before
    // us (its timers were registered first).
    const auto& sba_out = sba_->output();
    if (acast_->output() && sba_out && !is_bot(*sba_out) &&
        *acast_->output() == *sba_out) {
      regular_ = *acast_->output();
    } else {
      regular_ = Value{};
    }
    regular_time_ = rt_.now();
    rt_.log_output(tag_, OutputRec{0, *regular_, {}, 0});
    if (notify_) notify_();
    if (is_bot(*regular_)) on_acast_update();  // immediate fallback if ready
    return;
  }
}

void BcInst::on_acast_update() {
  if (!regular_ || !is_bot(*regular_) || fallback_) {
    if (notify_) notify_();
    return;
  }
  if (acast_->output() && !is_bot(*acast_->output())) {
    fallback_ = *acast_->output();
    fallback_time_ = rt_.now();
    rt_.log_output(tag_, OutputRec{0, *fallback_, {}, 1});
  }
  if (notify_) notify_();
}

std::optional<Value> BcInst::final_output() const {
  if (regular_ && !is_bot(*regular_)) return regular_;
  if (fallback_) return fallback_;
  return std::nullopt;
}

}  // namespace bobmpc

#include "bobmpc/protocols/agreement.hpp"

namespace bobmpc {

namespace {

// Majority bit of the `bits` restricted to `members`; ties go to 1.
int majority_bit(Mask members, Mask bits) {
  int total = mask_count(members);
  int ones = mask_count(members & bits);
  return 2 * ones >= total ? 1 : 0;
}

}  // namespace

VoteInst::VoteInst(PartyRuntime& rt, TagId tag, int t,
                   std::function<void()> notify)
    : Instance(rt, tag), t_(t), notify_(std::move(notify)) {}

void VoteInst::start() {
  World& w = rt_.world();
  int n = rt_.params().n;
  acasts_.resize(static_cast<size_t>(3 * n));
  for (int wv = 0; wv < 3; ++wv)
    for (int j = 0; j < n; ++j)
      acasts_[static_cast<size_t>(wv * n + j)] = rt_.spawn<AcastInst>(
          w.tag_child(tag_, Kind::Acast, wv * n + j), j, t_,
          [this] { reevaluate(); });
  if (input_ && !input_sent_) {
    input_sent_ = true;
    wave(0, rt_.id())->set_input(bit_value(*input_));
  }
}

void VoteInst::set_input(int bit) {
  if (input_) return;
  input_ = bit;
  if (!acasts_.empty() && !input_sent_) {
    input_sent_ = true;
    wave(0, rt_.id())->set_input(bit_value(bit));
  }
}

void VoteInst::reevaluate() {
  int n = rt_.params().n;
  bool progressed = true;
  while (progressed) {
    progressed = false;

    // wave 0: collect inputs
    for (int j = 0; j < n; ++j) {
      if (mask_has(x_members_, j)) continue;
      const auto& o = wave(0, j)->output();
      if (!o) continue;
      int b = as_bit(*o);
      if (b < 0) continue;  // non-bit garbage: never admitted
      x_members_ |= mask_bit(j);
      if (b) x_bits_ |= mask_bit(j);
      progressed = true;
      if (!x_frozen_ && mask_count(x_members_) == n - t_) {
        x_frozen_ = true;
        x_frozen_mask_ = x_members_;
        a_bit_ = majority_bit(x_members_, x_bits_);
        wave(1, rt_.id())->set_input(
            Value{VoteSet{x_members_, x_bits_ & x_members_,
                          static_cast<std::uint8_t>(a_bit_)}});
      }
    }

    // wave 1: votes justified against the growing input set
    for (int j = 0; j < n; ++j) {
      if (mask_has(y_members_, j)) continue;
      const auto& o = wave(1, j)->output();
      if (!o) continue;
      const auto* vs = std::get_if<VoteSet>(&*o);
      if (!vs) continue;
      if (mask_count(vs->members) != n - t_) continue;
      if ((vs->members & ~x_members_) != 0) continue;          // subset of X_i
      if (((vs->bits ^ x_bits_) & vs->members) != 0) continue;  // same bits
      if (majority_bit(vs->members, vs->bits) != (vs->maj & 1)) continue;
      y_members_ |= mask_bit(j);
      if (vs->maj & 1) y_abits_ |= mask_bit(j);
      progressed = true;
      if (!y_frozen_ && mask_count(y_members_) == n - t_) {
        y_frozen_ = true;
        y_frozen_mask_ = y_members_;
        b_bit_ = majority_bit(y_members_, y_abits_);
        wave(2, rt_.id())->set_input(
            Value{VoteSet{y_members_, y_abits_ & y_members_,
                          static_cast<std::uint8_t>(b_bit_)}});
      }
    }

    // wave 2: re-votes justified against the accepted vote set
    for (int j = 0; j < n; ++j) {
      if (mask_has(z_members_, j)) continue;
      const auto& o = wave(2, j)->output();
      if (!o) continue;
      const auto* vs = std::get_if<VoteSet>(&*o);
      if (!vs) continue;
      if (mask_count(vs->members) != n - t_) continue;
      if ((vs->members & ~y_members_) != 0) continue;
      if (((vs->bits ^ y_abits_) & vs->members) != 0) continue;
      if (majority_bit(vs->members, vs->bits) != (vs->maj & 1)) continue;
      z_members_ |= mask_bit(j);
      if (vs->maj & 1) z_bbits_ |= mask_bit(j);
      progressed = true;
      if (!z_frozen_ && mask_count(z_members_) == n - t_) {
        z_frozen_ = true;
        z_frozen_mask_ = z_members_;
      }
    }
  }

  if (out_ || !z_frozen_) return;

  GradedBit g;
  Mask ya = y_abits_ & y_frozen_mask_;
  if (ya == y_frozen_mask_ || ya == 0) {
    g.sigma = ya ? 1 : 0;
    g.grade = 2;
  } else {
    Mask zb = z_bbits_ & z_frozen_mask_;
    if (zb == z_frozen_mask_ || zb == 0) {
      g.sigma = zb ? 1 : 0;
      g.grade = 1;
    } else {
      g.sigma = 2;
      g.grade = 0;
    }
  }
  out_ = g;
  rt_.log_output(tag_, OutputRec{0, bit_value(g.sigma), {}, g.grade});
  if (notify_) notify_();
}

void CoinInst::join() {
  if (joined_) return;
  joined_ = true;
  // The flip costs c*delta of simulated time: c-1 deltas of local work plus
  // one network round trip to fetch the oracle value.
  Time extra = (rt_.params().k_aba - 20) * rt_.schedule().delta;
  if (extra > 0) {
    rt_.set_timer(tag_, 1, 0, rt_.now() + extra);
    return;
  }
  fetch();
}

void CoinInst::fetch() {
  rt_.send(rt_.id(), tag_, Body{MsgKind::OecShare, -1, 0, Value{}});
}

void CoinInst::on_timer(int which, int) {
  if (which == 1) fetch();
}

void CoinInst::on_message(PartyId from, const Body& body) {
  if (from != rt_.id() || out_) return;
  out_ = static_cast<int>(rt_.world().coin_value(tag_, rt_.id()) & 1);
  if (notify_) notify_();
}

void AbaInst::set_input(int bit) {
  if (input_) return;
  input_ = bit;
  cur_ = bit;
  start_iteration();
}

void AbaInst::start_iteration() {
  if (out_) return;  // decided parties stop opening iterations
  ++iter_;
  World& w = rt_.world();
  stage_ = 1;
  vote1_ = rt_.spawn<VoteInst>(w.tag_child(tag_, Kind::Vote, 2 * iter_ - 1), t_,
                               [this] { step_iteration(); });
  vote2_ = nullptr;
  coin_ = nullptr;
  vote1_->set_input(cur_);
  step_iteration();
}

void AbaInst::step_iteration() {
  World& w = rt_.world();
  if (stage_ == 1 && vote1_ && vote1_->output()) {
    g1_ = *vote1_->output();
    stage_ = 2;
    coin_ = rt_.spawn<CoinInst>(w.tag_child(tag_, Kind::Coin, iter_),
                                [this] { step_iteration(); });
    coin_->join();
  }
  if (stage_ == 2 && coin_ && coin_->output()) {
    int c = *coin_->output();
    cur_ = g1_.grade < 2 ? c : g1_.sigma;
    stage_ = 3;
    vote2_ = rt_.spawn<VoteInst>(w.tag_child(tag_, Kind::Vote, 2 * iter_), t_,
                                 [this] { step_iteration(); });
    vote2_->set_input(cur_);
  }
  if (stage_ == 3 && vote2_ && vote2_->output()) {
    GradedBit g2 = *vote2_->output();
    if (g2.grade > 0 && !g2.lambda()) cur_ = g2.sigma;
    if (g2.grade == 2 && !committed_) {
      committed_ = true;
      send_ready(g2.sigma);
    }
    stage_ = 0;
    start_iteration();
  }
}

void AbaInst::send_ready(int bit) {
  if (ready_sent_) return;
  ready_sent_ = true;
  rt_.send_all(tag_, Body{MsgKind::AbaReady, bit, 0, Value{}});
}

void AbaInst::on_message(PartyId from, const Body& body) {
  if (body.kind != MsgKind::AbaReady) return;
  int bit = body.a & 1;
  if (mask_has(ready_masks_[bit], from)) return;
  ready_masks_[bit] |= mask_bit(from);
  int c = mask_count(ready_masks_[bit]);
  if (c >= t_ + 1) send_ready(bit);
  if (c >= 2 * t_ + 1 && !out_) {
    out_ = bit;
    out_time_ = rt_.now();
    rt_.log_output(tag_, OutputRec{0, bit_value(bit), {}, 0});
    if (notify_) notify_();
  }
}

void BaInst::start() {
  World& w = rt_.world();
  int n = rt_.params().n;
  bcs_.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    bcs_[static_cast<size_t>(j)] = rt_.spawn<BcInst>(
        w.tag_child(tag_, Kind::Bc, j), anchor_, j, t_,
        [this] { maybe_enter_aba(); });
  aba_ = rt_.spawn<AbaInst>(w.tag_child(tag_, Kind::Aba, 0), t_, [this] {
    if (out_ || !aba_->output()) return;
    out_ = *aba_->output();
    out_time_ = rt_.now();
    rt_.log_output(tag_, OutputRec{0, bit_value(*out_), {}, 0});
    if (notify_) notify_();
  });
}

void BaInst::set_input(int bit) {
  if (input_) return;
  input_ = bit;
  input_time_ = rt_.now();
  rt_.log_input(tag_, bit_value(bit));
  bcs_[static_cast<size_t>(rt_.id())]->set_input(bit_value(bit));
  maybe_enter_aba();
}

void BaInst::maybe_enter_aba() {
  if (aba_input_ || !input_) return;
  int n = rt_.params().n;
  Mask r = 0;
  int ones = 0;
  for (int j = 0; j < n; ++j) {
    const auto& reg = bcs_[static_cast<size_t>(j)]->regular_output();
    if (!reg) return;  // all regular outputs land at anchor + T_BC
    int b = as_bit(*reg);
    if (b >= 0) {
      r |= mask_bit(j);
      if (b) ones |= mask_bit(j);
    }
  }
  int v;
  if (mask_count(r) >= n - t_) {
    v = majority_bit(r, static_cast<Mask>(ones));
  } else {
    v = *input_;
  }
  aba_input_ = v;
  aba_->set_input(v);
}

}  // namespace bobmpc

#include "bobmpc/protocols/mpc.hpp"

namespace bobmpc {

void CirEvalInst::start() {
  World& w = rt_.world();
  const Field& f = rt_.field();
  int t_s = rt_.params().t_s;
  wire_.resize(static_cast<size_t>(cir_->wires));
  mul_beavers_.assign(static_cast<size_t>(cir_->mul_count()), nullptr);
  mul_out_wire_.assign(static_cast<size_t>(cir_->mul_count()), -1);
  out_oec_.emplace(&rt_.field(), &rt_.points(), t_s, t_s,
                   mask_all(rt_.params().n), 1);

  acs_ = rt_.spawn<AcsInst>(w.tag_child(tag_, Kind::Acs, 0), 0, 1,
                            [this] { on_inputs_ready(); });
  Poly p = Poly::zero(t_s);
  p.coeffs()[0] = f.reduce(input_);
  for (int i = 1; i <= t_s; ++i) p.coeffs()[static_cast<size_t>(i)] = rt_.rng().next_fe(f);
  acs_->set_input({p});

  if (cir_->mul_count() > 0)
    preproc_ = rt_.spawn<PreprocInst>(w.tag_child(tag_, Kind::Preproc, 0), 0,
                                      cir_->mul_count(), [this] { eval_gates(); });
}

void CirEvalInst::on_inputs_ready() {
  if (!acs_->has_output() || wire_.empty() || wire_[0].has_value()) return;
  Mask cs = acs_->cs();
  for (int j = 0; j < cir_->n; ++j) {
    Fe share = mask_has(cs, j) ? acs_->shares_of(j)[0] : 0;
    wire_[static_cast<size_t>(j)] = share;
    rt_.world().log_wire(rt_.id(), j, share);
  }
  eval_gates();
}

void CirEvalInst::eval_gates() {
  if (rt_.killed() || wire_.empty() || !wire_[0].has_value()) return;
  const Field& f = rt_.field();
  bool progress = true;
  while (progress) {
    progress = false;
    int mul_idx = 0;
    for (size_t k = 0; k < cir_->gates.size(); ++k) {
      const Circuit::Gate& g = cir_->gates[k];
      int my_mul = g.op == Circuit::Op::Mul ? mul_idx++ : -1;
      if (wire_[static_cast<size_t>(g.out)]) continue;
      if (!wire_[static_cast<size_t>(g.a)]) continue;
      if ((g.op == Circuit::Op::Add || g.op == Circuit::Op::Mul) &&
          !wire_[static_cast<size_t>(g.b)])
        continue;
      Fe a = *wire_[static_cast<size_t>(g.a)];
      switch (g.op) {
        case Circuit::Op::Add:
          wire_[static_cast<size_t>(g.out)] = f.add(a, *wire_[static_cast<size_t>(g.b)]);
          break;
        case Circuit::Op::AddC:
          wire_[static_cast<size_t>(g.out)] = f.add(a, f.reduce(g.c));
          break;
        case Circuit::Op::MulC:
          wire_[static_cast<size_t>(g.out)] = f.mul(a, f.reduce(g.c));
          break;
        case Circuit::Op::Mul: {
          BeaverInst*& b = mul_beavers_[static_cast<size_t>(my_mul)];
          if (!b) {
            if (!preproc_ || !preproc_->has_output()) continue;
            const auto& tr = preproc_->out_shares();
            b = rt_.spawn<BeaverInst>(
                rt_.world().tag_child(tag_, Kind::Beaver, my_mul),
                [this] { eval_gates(); });
            mul_out_wire_[static_cast<size_t>(my_mul)] = g.out;
            b->set_input(a, *wire_[static_cast<size_t>(g.b)],
                         tr[static_cast<size_t>(3 * my_mul)],
                         tr[static_cast<size_t>(3 * my_mul + 1)],
                         tr[static_cast<size_t>(3 * my_mul + 2)]);
          }
          if (!b->has_output()) continue;
          wire_[static_cast<size_t>(g.out)] = b->z_share();
          break;
        }
      }
      rt_.world().log_wire(rt_.id(), g.out, *wire_[static_cast<size_t>(g.out)]);
      progress = true;
    }
  }
  if (!out_sent_ && wire_[static_cast<size_t>(cir_->output_wire)]) {
    out_sent_ = true;
    rt_.send_all(tag_, Body{MsgKind::OecShare, 0, 0,
                            Value{FeVec{{*wire_[static_cast<size_t>(cir_->output_wire)]}}}});
  }
}

void CirEvalInst::on_message(PartyId from, const Body& body) {
  if (body.kind == MsgKind::OecShare && body.a == 0) {
    const auto* fv = std::get_if<FeVec>(&body.value);
    if (!fv || fv->v.size() != 1 || y_) return;
    out_oec_->step(from, {rt_.field().reduce(fv->v[0])});
    if (out_oec_->done()) {
      y_ = out_oec_->values(rt_.field())[0];
      send_ready(*y_);
    }
    return;
  }
  if (body.kind == MsgKind::MpcReady) {
    const auto* u = std::get_if<std::uint64_t>(&body.value);
    if (!u) return;
    Fe y = rt_.field().reduce(*u);
    Mask* slot = nullptr;
    for (auto& [val, mask] : ready_counts_)
      if (val == y) slot = &mask;
    if (!slot) {
      ready_counts_.emplace_back(y, 0);
      slot = &ready_counts_.back().second;
    }
    if (mask_has(*slot, from)) return;
    *slot |= mask_bit(from);
    int c = mask_count(*slot);
    int t_s = rt_.params().t_s;
    if (c >= t_s + 1) send_ready(y);
    if (c >= 2 * t_s + 1 && !out_) {
      out_ = y;
      out_time_ = rt_.now();
      rt_.log_output(tag_, OutputRec{0, Value{static_cast<std::uint64_t>(y)}, {}, 0});
      if (notify_) notify_();
      rt_.world().kill_party(rt_.id());
    }
    return;
  }
}

void CirEvalInst::send_ready(Fe y) {
  if (ready_sent_) return;
  ready_sent_ = true;
  rt_.send_all(tag_, Body{MsgKind::MpcReady, 0, 0, Value{static_cast<std::uint64_t>(y)}});
}

}  // namespace bobmpc

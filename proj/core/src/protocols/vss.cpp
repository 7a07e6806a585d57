#include "bobmpc/protocols/vss.hpp"

namespace bobmpc {

namespace {
enum CoreTimer {
  kDealerStar = 101,
  kAcceptEval = 102,
  kSpawnStarA = 103,
  kOkDecide = 104,
  kPairSend = 1,   // wps
  kWpsInput = 2,   // vss
};
}  // namespace

SharingCoreInst::SharingCoreInst(PartyRuntime& rt, TagId tag, Time anchor,
                                 PartyId dealer, int l_count,
                                 std::function<void()> notify)
    : Instance(rt, tag),
      anchor_(anchor),
      dealer_(dealer),
      l_count_(l_count),
      notify_(std::move(notify)),
      graph_d_reg_(rt.params().n),
      graph_d_any_(rt.params().n),
      graph_reg_(rt.params().n),
      graph_any_(rt.params().n) {
  int n = rt.params().n;
  nok_reg_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
}

void SharingCoreInst::setup_core() {
  World& w = rt_.world();
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  Time results = anchor_ + results_offset();
  const Schedule& sc = rt_.schedule();

  ok_bcs_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), nullptr);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      ok_bcs_[static_cast<size_t>(i * n + j)] = rt_.spawn<BcInst>(
          w.tag_child(tag_, Kind::Bc, i * n + j), results, i, t_s,
          [this, i, j] { on_pair_update(i, j); });
    }
  star_bc_ = rt_.spawn<BcInst>(w.tag_child(tag_, Kind::Bc, n * n), results + sc.t_bc,
                               dealer_, t_s, [this] {
                                 on_core_update();
                                 resolve_branch();
                               });
  ba_ = rt_.spawn<BaInst>(w.tag_child(tag_, Kind::Ba, 0), results + 2 * sc.t_bc,
                          t_s, [this] {
                            if (branch_ < 0 && ba_->output()) branch_ = *ba_->output();
                            on_core_update();
                            resolve_branch();
                          });
  rt_.set_timer(tag_, kDealerStar, 0, results + sc.t_bc);
  rt_.set_timer(tag_, kAcceptEval, 0, results + 2 * sc.t_bc);
  rt_.set_timer(tag_, kSpawnStarA, 0, results + 2 * sc.t_bc + sc.t_ba);
}

void SharingCoreInst::set_input(const std::vector<Poly>& polys) {
  if (rt_.id() != dealer_ || !qs_.empty()) return;
  if (static_cast<int>(polys.size()) != l_count_) return;
  const Field& f = rt_.field();
  int t_s = rt_.params().t_s;
  qs_.reserve(polys.size());
  for (const Poly& q : polys)
    qs_.push_back(SymBivar::embed_random(f, q, t_s, rt_.rng()));
  int n = rt_.params().n;
  for (int j = 0; j < n; ++j) {
    FeVec rows;
    rows.v.reserve(static_cast<size_t>(l_count_) * (static_cast<size_t>(t_s) + 1));
    for (const SymBivar& Q : qs_) {
      Poly row = Q.row_at(f, rt_.points().alpha(j));
      for (int c = 0; c <= t_s; ++c) rows.v.push_back(row.coeff(c));
    }
    rt_.send(j, tag_, Body{MsgKind::Rows, 0, 0, Value{std::move(rows)}});
  }
}

void SharingCoreInst::handle_rows(const Body& body) {
  if (rows_) return;
  const auto* fv = std::get_if<FeVec>(&body.value);
  int t_s = rt_.params().t_s;
  size_t per = static_cast<size_t>(t_s) + 1;
  if (!fv || fv->v.size() != per * static_cast<size_t>(l_count_)) return;
  const Field& f = rt_.field();
  std::vector<Poly> rows;
  rows.reserve(static_cast<size_t>(l_count_));
  for (int l = 0; l < l_count_; ++l) {
    std::vector<Fe> coeffs(per);
    for (size_t c = 0; c < per; ++c)
      coeffs[c] = f.reduce(fv->v[static_cast<size_t>(l) * per + c]);
    rows.emplace_back(std::move(coeffs));
  }
  rows_ = std::move(rows);
}

void SharingCoreInst::try_ok_decision(PartyId j) {
  if (j == rt_.id() || mask_has(ok_decided_, j) || mask_has(ok_scheduled_, j))
    return;
  if (!rows_ || !common_from(j)) return;
  ok_scheduled_ |= mask_bit(j);
  rt_.set_timer(tag_, kOkDecide, j, grid_up(rt_.now()));
}

void SharingCoreInst::on_pair_update(PartyId i, PartyId j) {
  int n = rt_.params().n;
  BcInst* bc = ok_bc(i, j);
  if (bc->regular_output() && !is_bot(*bc->regular_output())) {
    const Value& v = *bc->regular_output();
    if (const auto* ok = std::get_if<OkVal>(&v); ok && ok->i == i && ok->j == j) {
      graph_reg_.add_ok(i, j);
      graph_any_.add_ok(i, j);
      if (rt_.id() == dealer_ && !mask_has(banned_, i) && !mask_has(banned_, j)) {
        graph_d_reg_.add_ok(i, j);
        graph_d_any_.add_ok(i, j);
      }
    } else if (const auto* nok = std::get_if<NokVal>(&v);
               nok && nok->i == i && nok->j == j) {
      auto& slot = nok_reg_[static_cast<size_t>(i * n + j)];
      if (!slot) slot = *nok;
    }
  }
  if (bc->fallback_used()) {
    const Value& v = *bc->final_output();
    if (const auto* ok = std::get_if<OkVal>(&v); ok && ok->i == i && ok->j == j) {
      graph_any_.add_ok(i, j);
      if (rt_.id() == dealer_ && !mask_has(banned_, i) && !mask_has(banned_, j))
        graph_d_any_.add_ok(i, j);
    }
  }
  on_core_update();
  resolve_branch();
}

void SharingCoreInst::dealer_prune_and_star() {
  if (rt_.id() != dealer_ || dealer_pruned_) return;
  dealer_pruned_ = true;
  const Field& f = rt_.field();
  int n = rt_.params().n;
  if (!qs_.empty()) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        const auto& nok = nok_reg_[static_cast<size_t>(i * n + j)];
        if (!nok) continue;
        bool lie = true;
        if (nok->ell >= 0 && nok->ell < l_count_) {
          Fe truth = qs_[static_cast<size_t>(nok->ell)].eval(
              f, rt_.points().alpha(j), rt_.points().alpha(i));
          lie = nok->v != truth;
        }
        if (lie) banned_ |= mask_bit(i);
      }
    for (int i = 0; i < n; ++i)
      if (mask_has(banned_, i)) {
        graph_d_reg_.isolate(i);
        graph_d_any_.isolate(i);
      }
  }
  // A party counts as consistent with itself, so the quota asks for
  // n - t_s - 1 genuine neighbors.
  int quota = n - rt_.params().t_s - 1;
  Mask w_set = prune_fixpoint(graph_d_reg_, quota, mask_all(n) & ~banned_);
  if (w_set == 0) return;
  auto star = find_star(graph_d_reg_, rt_.params().t_s, w_set);
  if (star && !star_sent_) {
    star_sent_ = true;
    star_bc_->set_input(Value{StarWEF{w_set, star->e, star->f}});
  }
}

void SharingCoreInst::evaluate_acceptance() {
  if (accept_evaluated_) return;
  accept_evaluated_ = true;
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  accepted_ = false;
  do {
    if (!star_bc_->regular_output()) break;
    const auto* s = std::get_if<StarWEF>(&*star_bc_->regular_output());
    if (!s) break;
    Mask w = s->w & mask_all(n);
    if (w != s->w || w == 0) break;
    // no conflicting regular-mode NOK pairs inside W
    bool conflict = false;
    for (int j = 0; j < n && !conflict; ++j) {
      if (!mask_has(w, j)) continue;
      for (int k = j + 1; k < n && !conflict; ++k) {
        if (!mask_has(w, k)) continue;
        const auto& a = nok_reg_[static_cast<size_t>(j * n + k)];
        const auto& b = nok_reg_[static_cast<size_t>(k * n + j)];
        if (a && b && a->ell == b->ell && a->v != b->v) conflict = true;
      }
    }
    if (conflict) break;
    // degree quotas, counting a party as consistent with itself
    bool quotas = true;
    for (int j = 0; j < n && quotas; ++j) {
      if (!mask_has(w, j)) continue;
      if (graph_reg_.degree(j) + 1 < n - t_s) quotas = false;
      if (mask_count(graph_reg_.neighbors(j) & w) + 1 < n - t_s) quotas = false;
    }
    if (!quotas) break;
    if (!star_valid(graph_reg_, Star{s->e, s->f}, t_s, w)) break;
    accepted_ = true;
  } while (false);
  ba_->set_input(accepted_ ? 0 : 1);
}

void SharingCoreInst::on_core_update() {
  // dealer's second star search, branch 1, re-run after every graph update
  if (rt_.id() == dealer_ && branch_ == 1 && star_a_bc_ && !star_a_sent_) {
    auto star = find_star(graph_d_any_, rt_.params().t_a,
                          mask_all(rt_.params().n) & ~banned_);
    if (star) {
      star_a_sent_ = true;
      star_a_bc_->set_input(Value{StarEF{star->e, star->f}});
    }
  }
}

void SharingCoreInst::resolve_branch() {
  if (out_shares_ || branch_ < 0) return;
  const Field& f = rt_.field();
  if (branch_ == 0) {
    if (!star_wef_) {
      auto fo = star_bc_->final_output();
      if (fo)
        if (const auto* s = std::get_if<StarWEF>(&*fo)) star_wef_ = *s;
      if (!star_wef_) return;
    }
    if (mask_has(star_wef_->w, rt_.id()) && rows_) {
      std::vector<Fe> shares;
      for (const Poly& r : *rows_) shares.push_back(r.coeff(0));
      emit_output(std::move(shares));
      return;
    }
    extract_outside(star_wef_->f);
    return;
  }
  // branch 1
  if (!star_ef_) {
    if (star_a_bc_) {
      auto fo = star_a_bc_->final_output();
      if (fo)
        if (const auto* s = std::get_if<StarEF>(&*fo)) star_ef_ = *s;
    }
    if (!star_ef_) return;
  }
  if (!star_a_valid_) {
    star_a_valid_ = star_valid(graph_any_, Star{star_ef_->e, star_ef_->f},
                               rt_.params().t_a, mask_all(rt_.params().n));
    if (!star_a_valid_) return;
  }
  if (mask_has(star_ef_->f, rt_.id()) && rows_) {
    std::vector<Fe> shares;
    for (const Poly& r : *rows_) shares.push_back(r.coeff(0));
    emit_output(std::move(shares));
    return;
  }
  extract_outside(star_ef_->f);
}

void SharingCoreInst::emit_output(std::vector<Fe> shares) {
  if (out_shares_) return;
  out_shares_ = std::move(shares);
  out_time_ = rt_.now();
  rt_.log_output(tag_, OutputRec{0, Value{}, *out_shares_, branch_});
  if (notify_) notify_();
}

void SharingCoreInst::core_timer(int which, int arg) {
  switch (which) {
    case kDealerStar:
      dealer_prune_and_star();
      return;
    case kAcceptEval:
      evaluate_acceptance();
      return;
    case kSpawnStarA: {
      World& w = rt_.world();
      int n = rt_.params().n;
      star_a_bc_ = rt_.spawn<BcInst>(w.tag_child(tag_, Kind::Bc, n * n + 1),
                                     rt_.now(), dealer_, rt_.params().t_s,
                                     [this] {
                                       on_core_update();
                                       resolve_branch();
                                     });
      on_core_update();
      resolve_branch();
      return;
    }
    case kOkDecide: {
      PartyId j = arg;
      if (mask_has(ok_decided_, j)) return;
      ok_decided_ |= mask_bit(j);
      const std::vector<Fe>* claimed = common_from(j);
      if (!rows_ || !claimed) return;
      const Field& f = rt_.field();
      PartyId me = rt_.id();
      int bad = -1;
      for (int l = 0; l < l_count_; ++l) {
        Fe mine = (*rows_)[static_cast<size_t>(l)].eval(f, rt_.points().alpha(j));
        if ((*claimed)[static_cast<size_t>(l)] != mine) {
          bad = l;
          break;
        }
      }
      BcInst* bc = ok_bc(me, j);
      if (bad < 0) {
        bc->set_input(Value{OkVal{me, j}});
      } else {
        Fe mine = (*rows_)[static_cast<size_t>(bad)].eval(f, rt_.points().alpha(j));
        bc->set_input(Value{NokVal{me, j, bad, mine}});
      }
      return;
    }
    default:
      return;
  }
}

// --- WPS ---

void WpsInst::start() {
  points_.resize(static_cast<size_t>(rt_.params().n));
  setup_core();
}

void WpsInst::on_message(PartyId from, const Body& body) {
  if (body.kind == MsgKind::Rows) {
    if (from != dealer_) return;
    handle_rows(body);
    if (rows_ && !pair_send_scheduled_) {
      pair_send_scheduled_ = true;
      rt_.set_timer(tag_, kPairSend, 0, grid_up(rt_.now()));
      for (int j = 0; j < rt_.params().n; ++j) try_ok_decision(j);
      resolve_branch();
    }
    return;
  }
  if (body.kind == MsgKind::Points) {
    auto& slot = points_[static_cast<size_t>(from)];
    if (slot) return;
    const auto* fv = std::get_if<FeVec>(&body.value);
    if (!fv || fv->v.size() != static_cast<size_t>(l_count_)) return;
    std::vector<Fe> vals(fv->v);
    for (Fe& x : vals) x = rt_.field().reduce(x);
    slot = std::move(vals);
    if (oec_ && mask_has(oec_from_, from)) {
      oec_->step(from, *slot);
      if (oec_->done()) extract_outside(oec_from_);
    }
    try_ok_decision(from);
    return;
  }
}

void WpsInst::on_timer(int which, int arg) {
  if (which == kPairSend) {
    if (pair_sent_ || !rows_) return;
    pair_sent_ = true;
    const Field& f = rt_.field();
    int n = rt_.params().n;
    for (int j = 0; j < n; ++j) {
      FeVec pts;
      pts.v.reserve(static_cast<size_t>(l_count_));
      for (const Poly& r : *rows_) pts.v.push_back(r.eval(f, rt_.points().alpha(j)));
      rt_.send(j, tag_, Body{MsgKind::Points, 0, 0, Value{std::move(pts)}});
    }
    return;
  }
  core_timer(which, arg);
}

void WpsInst::extract_outside(Mask from_set) {
  if (out_shares_) return;
  if (!oec_) {
    oec_from_ = from_set;
    oec_.emplace(&rt_.field(), &rt_.points(), rt_.params().t_s,
                 rt_.params().t_s, from_set, l_count_);
    int n = rt_.params().n;
    for (int j = 0; j < n; ++j)
      if (mask_has(from_set, j) && points_[static_cast<size_t>(j)])
        oec_->step(j, *points_[static_cast<size_t>(j)]);
  }
  if (!oec_->done()) return;
  const Field& f = rt_.field();
  std::vector<Poly> rows;
  std::vector<Fe> shares;
  for (int l = 0; l < l_count_; ++l) {
    rows.push_back(*oec_->session(l).output());
    shares.push_back(rows.back().eval(f, 0));
  }
  oec_rows_ = std::move(rows);
  emit_output(std::move(shares));
}

// --- VSS ---

void VssInst::start() {
  World& w = rt_.world();
  int n = rt_.params().n;
  Time d = rt_.schedule().delta;
  wps_.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    wps_[static_cast<size_t>(j)] =
        rt_.spawn<WpsInst>(w.tag_child(tag_, Kind::Wps, j), anchor_ + d, j,
                           l_count_, [this] { on_wps_update(); });
  setup_core();
}

void VssInst::on_message(PartyId from, const Body& body) {
  if (body.kind == MsgKind::Rows) {
    if (from != dealer_) return;
    handle_rows(body);
    if (rows_ && !wps_input_scheduled_) {
      wps_input_scheduled_ = true;
      rt_.set_timer(tag_, kWpsInput, 0, grid_up(rt_.now()));
      for (int j = 0; j < rt_.params().n; ++j) try_ok_decision(j);
      resolve_branch();
    }
    return;
  }
}

void VssInst::on_timer(int which, int arg) {
  if (which == kWpsInput) {
    if (wps_input_given_ || !rows_) return;
    wps_input_given_ = true;
    wps_[static_cast<size_t>(rt_.id())]->set_input(*rows_);
    return;
  }
  core_timer(which, arg);
}

void VssInst::on_wps_update() {
  int n = rt_.params().n;
  for (int j = 0; j < n; ++j)
    if (wps_[static_cast<size_t>(j)]->has_output()) try_ok_decision(j);
  resolve_branch();
}

void VssInst::extract_outside(Mask from_set) {
  if (out_shares_ || ss_frozen_) {
    if (ss_frozen_ && !out_shares_) finish_ss();
    return;
  }
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  for (int j = 0; j < n && !ss_frozen_; ++j) {
    if (!mask_has(from_set, j) || mask_has(ss_, j)) continue;
    if (!wps_[static_cast<size_t>(j)]->has_output()) continue;
    ss_ |= mask_bit(j);
    if (mask_count(ss_) == t_s + 1) ss_frozen_ = true;
  }
  if (ss_frozen_) finish_ss();
}

void VssInst::finish_ss() {
  if (out_shares_) return;
  const Field& f = rt_.field();
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  std::vector<Fe> shares;
  shares.reserve(static_cast<size_t>(l_count_));
  for (int l = 0; l < l_count_; ++l) {
    std::vector<std::pair<Fe, Fe>> pts;
    for (int j = 0; j < n; ++j)
      if (mask_has(ss_, j))
        pts.emplace_back(rt_.points().alpha(j),
                         wps_[static_cast<size_t>(j)]->shares()[static_cast<size_t>(l)]);
    Poly q = interpolate(f, pts, t_s);
    shares.push_back(q.eval(f, 0));
  }
  emit_output(std::move(shares));
}

}  // namespace bobmpc

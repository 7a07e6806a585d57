#include "bobmpc/protocols/triples.hpp"

namespace bobmpc {

// --- Beaver ---

void BeaverInst::set_input(Fe x_sh, Fe y_sh, Fe a_sh, Fe b_sh, Fe c_sh) {
  if (input_set_) return;
  input_set_ = true;
  const Field& f = rt_.field();
  a_sh_ = a_sh;
  b_sh_ = b_sh;
  c_sh_ = c_sh;
  Fe e_sh = f.sub(x_sh, a_sh);
  Fe d_sh = f.sub(y_sh, b_sh);
  oec_.emplace(&rt_.field(), &rt_.points(), rt_.params().t_s, rt_.params().t_s,
               mask_all(rt_.params().n), 2);
  rt_.send_all(tag_, Body{MsgKind::OecShare, 0, 0, Value{FeVec{{d_sh, e_sh}}}});
  for (auto& [from, vals] : early_) oec_->step(from, vals);
  early_.clear();
  finish();
}

void BeaverInst::finish() {
  if (out_ || !oec_ || !oec_->done()) return;
  const Field& f = rt_.field();
  auto de = oec_->values(f);
  d_ = de[0];
  e_ = de[1];
  out_ = f.add(f.mul(d_, e_),
               f.add(f.mul(e_, b_sh_), f.add(f.mul(d_, a_sh_), c_sh_)));
  if (notify_) notify_();
}

void BeaverInst::on_message(PartyId from, const Body& body) {
  if (body.kind != MsgKind::OecShare || body.a != 0) return;
  const auto* fv = std::get_if<FeVec>(&body.value);
  if (!fv || fv->v.size() != 2) return;
  std::vector<Fe> vals{rt_.field().reduce(fv->v[0]), rt_.field().reduce(fv->v[1])};
  if (!oec_) {
    early_.emplace_back(from, std::move(vals));
    return;
  }
  if (out_) return;
  oec_->step(from, vals);
  finish();
}

// --- TripTrans ---

void TripTransInst::set_input(const std::vector<std::array<Fe, 3>>& triples) {
  if (!xs_.empty()) return;
  if (static_cast<int>(triples.size()) != 2 * d_ + 1) return;
  const Field& f = rt_.field();
  const EvalPoints& pts = rt_.points();
  int m = 2 * d_ + 1;
  xs_.assign(static_cast<size_t>(m), 0);
  ys_.assign(static_cast<size_t>(m), 0);
  zs_.assign(static_cast<size_t>(m), 0);
  for (int i = 0; i <= d_; ++i) {
    xs_[static_cast<size_t>(i)] = triples[static_cast<size_t>(i)][0];
    ys_[static_cast<size_t>(i)] = triples[static_cast<size_t>(i)][1];
    zs_[static_cast<size_t>(i)] = triples[static_cast<size_t>(i)][2];
  }
  std::vector<Fe> head_xs(pts.alphas.begin(), pts.alphas.begin() + (d_ + 1));
  beavers_.resize(static_cast<size_t>(d_));
  World& w = rt_.world();
  for (int i = d_ + 1; i < m; ++i) {
    auto lam = lagrange_point_coeffs(f, head_xs, pts.alpha(i));
    Fe xv = 0, yv = 0;
    for (int k = 0; k <= d_; ++k) {
      xv = f.add(xv, f.mul(lam[static_cast<size_t>(k)], xs_[static_cast<size_t>(k)]));
      yv = f.add(yv, f.mul(lam[static_cast<size_t>(k)], ys_[static_cast<size_t>(k)]));
    }
    xs_[static_cast<size_t>(i)] = xv;
    ys_[static_cast<size_t>(i)] = yv;
    BeaverInst* b = rt_.spawn<BeaverInst>(w.tag_child(tag_, Kind::Beaver, i),
                                          [this] { on_beaver(); });
    beavers_[static_cast<size_t>(i - d_ - 1)] = b;
    b->set_input(xv, yv, triples[static_cast<size_t>(i)][0],
                 triples[static_cast<size_t>(i)][1],
                 triples[static_cast<size_t>(i)][2]);
  }
  if (d_ == 0) {
    done_ = true;
    if (notify_) notify_();
    return;
  }
  on_beaver();
}

void TripTransInst::on_beaver() {
  if (done_ || xs_.empty()) return;
  for (BeaverInst* b : beavers_)
    if (!b || !b->has_output()) return;
  for (int i = 0; i < d_; ++i)
    zs_[static_cast<size_t>(d_ + 1 + i)] = beavers_[static_cast<size_t>(i)]->z_share();
  done_ = true;
  if (notify_) notify_();
}

// --- TripSh ---

namespace {
enum TripShTimer { kEmitTripSh = 1 };
constexpr int kGammaChan = 1;
constexpr int kSuspectChan = 2;
}  // namespace

void TripShInst::start() {
  World& w = rt_.world();
  int t_s = rt_.params().t_s;
  vss_ = rt_.spawn<VssInst>(w.tag_child(tag_, Kind::Vss, 0), anchor_, dealer_,
                            3 * (2 * t_s + 1) * l_, [this] { on_vss_done(); });
  acs_ = rt_.spawn<AcsInst>(w.tag_child(tag_, Kind::Acs, 0), anchor_, 3 * l_,
                            [this] { maybe_start_verification(); });
  // verification triples: every party contributes L random products
  const Field& f = rt_.field();
  std::vector<Poly> polys;
  polys.reserve(static_cast<size_t>(3 * l_));
  for (int l = 0; l < l_; ++l) {
    Fe u = rt_.rng().next_fe(f);
    Fe v = rt_.rng().next_fe(f);
    Fe wv = f.mul(u, v);
    for (Fe c : {u, v, wv}) {
      Poly p = Poly::zero(t_s);
      p.coeffs()[0] = c;
      for (int i = 1; i <= t_s; ++i) p.coeffs()[static_cast<size_t>(i)] = rt_.rng().next_fe(f);
      polys.push_back(std::move(p));
    }
  }
  acs_->set_input(polys);
  rt_.set_timer(tag_, kEmitTripSh, 0, anchor_ + rt_.schedule().t_tripsh);
}

void TripShInst::set_input(const std::vector<std::array<Fe, 3>>& triples) {
  if (rt_.id() != dealer_) return;
  int t_s = rt_.params().t_s;
  if (static_cast<int>(triples.size()) != (2 * t_s + 1) * l_) return;
  const Field& f = rt_.field();
  std::vector<Poly> polys;
  polys.reserve(triples.size() * 3);
  for (const auto& tr : triples)
    for (int c = 0; c < 3; ++c) {
      Poly p = Poly::zero(t_s);
      p.coeffs()[0] = f.reduce(tr[static_cast<size_t>(c)]);
      for (int i = 1; i <= t_s; ++i) p.coeffs()[static_cast<size_t>(i)] = rt_.rng().next_fe(f);
      polys.push_back(std::move(p));
    }
  vss_->set_input(polys);
}

void TripShInst::on_vss_done() {
  if (trans_started_ || !vss_->has_output()) return;
  trans_started_ = true;
  int t_s = rt_.params().t_s;
  int m = 2 * t_s + 1;
  const auto& shares = vss_->shares();  // 3*m*L, batch-major (x,y,z per triple)
  World& w = rt_.world();
  trans_.resize(static_cast<size_t>(l_));
  for (int l = 0; l < l_; ++l) {
    std::vector<std::array<Fe, 3>> trip(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j)
      for (int c = 0; c < 3; ++c)
        trip[static_cast<size_t>(j)][static_cast<size_t>(c)] =
            shares[static_cast<size_t>((l * m + j) * 3 + c)];
    trans_[static_cast<size_t>(l)] = rt_.spawn<TripTransInst>(
        w.tag_child(tag_, Kind::TripTrans, l), t_s,
        [this] { maybe_start_verification(); });
    trans_[static_cast<size_t>(l)]->set_input(trip);
  }
  maybe_start_verification();
}

void TripShInst::maybe_start_verification() {
  if (verification_started_) return;
  if (!acs_->has_output()) return;
  if (trans_.empty()) return;
  for (auto* t : trans_)
    if (!t->has_output()) return;
  verification_started_ = true;

  const Field& f = rt_.field();
  const EvalPoints& pts = rt_.points();
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  w_set_ = acs_->cs();
  for (int j = 0; j < n; ++j)
    if (mask_has(w_set_, j)) w_list_.push_back(j);

  // extend X/Y/Z to every party index
  ext_x_.assign(static_cast<size_t>(l_), std::vector<Fe>(static_cast<size_t>(n), 0));
  ext_y_ = ext_x_;
  ext_z_ = ext_x_;
  std::vector<Fe> head_x(pts.alphas.begin(), pts.alphas.begin() + (t_s + 1));
  std::vector<Fe> head_z(pts.alphas.begin(), pts.alphas.begin() + (2 * t_s + 1));
  for (int l = 0; l < l_; ++l) {
    TripTransInst* tr = trans_[static_cast<size_t>(l)];
    for (int j = 0; j < n; ++j) {
      if (j < 2 * t_s + 1) {
        ext_x_[static_cast<size_t>(l)][static_cast<size_t>(j)] = tr->xs()[static_cast<size_t>(j)];
        ext_y_[static_cast<size_t>(l)][static_cast<size_t>(j)] = tr->ys()[static_cast<size_t>(j)];
        ext_z_[static_cast<size_t>(l)][static_cast<size_t>(j)] = tr->zs()[static_cast<size_t>(j)];
      } else {
        auto lx = lagrange_point_coeffs(f, head_x, pts.alpha(j));
        Fe xv = 0, yv = 0;
        for (int k = 0; k <= t_s; ++k) {
          xv = f.add(xv, f.mul(lx[static_cast<size_t>(k)], tr->xs()[static_cast<size_t>(k)]));
          yv = f.add(yv, f.mul(lx[static_cast<size_t>(k)], tr->ys()[static_cast<size_t>(k)]));
        }
        auto lz = lagrange_point_coeffs(f, head_z, pts.alpha(j));
        Fe zv = 0;
        for (int k = 0; k < 2 * t_s + 1; ++k)
          zv = f.add(zv, f.mul(lz[static_cast<size_t>(k)], tr->zs()[static_cast<size_t>(k)]));
        ext_x_[static_cast<size_t>(l)][static_cast<size_t>(j)] = xv;
        ext_y_[static_cast<size_t>(l)][static_cast<size_t>(j)] = yv;
        ext_z_[static_cast<size_t>(l)][static_cast<size_t>(j)] = zv;
      }
    }
  }

  // supervised re-multiplication, one Beaver per (supervisor, batch)
  World& w = rt_.world();
  super_.assign(w_list_.size() * static_cast<size_t>(l_), nullptr);
  for (size_t s = 0; s < w_list_.size(); ++s) {
    PartyId j = w_list_[s];
    const auto& ver = acs_->shares_of(j);  // 3L shares
    for (int l = 0; l < l_; ++l) {
      BeaverInst* b = rt_.spawn<BeaverInst>(
          w.tag_child(tag_, Kind::Beaver, j * l_ + l), [this] { on_super_beaver(); });
      super_[s * static_cast<size_t>(l_) + static_cast<size_t>(l)] = b;
      b->set_input(ext_x_[static_cast<size_t>(l)][static_cast<size_t>(j)],
                   ext_y_[static_cast<size_t>(l)][static_cast<size_t>(j)],
                   ver[static_cast<size_t>(3 * l)], ver[static_cast<size_t>(3 * l + 1)],
                   ver[static_cast<size_t>(3 * l + 2)]);
    }
  }
  on_super_beaver();
}

void TripShInst::on_super_beaver() {
  if (gamma_sent_ || !verification_started_) return;
  for (auto* b : super_)
    if (!b->has_output()) return;
  gamma_sent_ = true;
  const Field& f = rt_.field();
  FeVec gamma;
  gamma.v.reserve(super_.size());
  for (size_t s = 0; s < w_list_.size(); ++s) {
    PartyId j = w_list_[s];
    for (int l = 0; l < l_; ++l) {
      Fe z_sh = ext_z_[static_cast<size_t>(l)][static_cast<size_t>(j)];
      Fe re_sh = super_[s * static_cast<size_t>(l_) + static_cast<size_t>(l)]->z_share();
      gamma.v.push_back(f.sub(z_sh, re_sh));
    }
  }
  gamma_oec_.emplace(&rt_.field(), &rt_.points(), rt_.params().t_s,
                     rt_.params().t_s, mask_all(rt_.params().n),
                     static_cast<int>(gamma.v.size()));
  rt_.send_all(tag_, Body{MsgKind::OecShare, kGammaChan, 0, Value{std::move(gamma)}});
  for (auto& [from, vals] : early_gamma_) gamma_oec_->step(from, vals);
  early_gamma_.clear();
  if (gamma_oec_->done()) on_gamma_done();
}

void TripShInst::on_message(PartyId from, const Body& body) {
  if (body.kind != MsgKind::OecShare) return;
  const auto* fv = std::get_if<FeVec>(&body.value);
  if (!fv) return;
  std::vector<Fe> vals(fv->v);
  for (Fe& x : vals) x = rt_.field().reduce(x);
  if (body.a == kGammaChan) {
    if (!gamma_oec_) {
      early_gamma_.emplace_back(from, std::move(vals));
      return;
    }
    bool was_done = gamma_oec_->done();
    gamma_oec_->step(from, vals);
    if (!was_done && gamma_oec_->done()) on_gamma_done();
    return;
  }
  if (body.a == kSuspectChan) {
    if (!suspect_oec_) {
      early_suspect_.emplace_back(from, std::move(vals));
      return;
    }
    bool was_done = suspect_oec_->done();
    suspect_oec_->step(from, vals);
    if (!was_done && suspect_oec_->done()) on_suspect_done();
    return;
  }
}

void TripShInst::on_gamma_done() {
  const Field& f = rt_.field();
  auto gamma = gamma_oec_->values(f);
  batch_bad_.assign(static_cast<size_t>(l_), false);
  flagged_.clear();
  for (size_t i = 0; i < gamma.size(); ++i)
    if (gamma[i] != 0) flagged_.push_back(static_cast<int>(i));
  if (flagged_.empty()) {
    finalize();
    return;
  }
  // publicly open every suspected triple
  suspects_sent_ = true;
  FeVec shares;
  for (int idx : flagged_) {
    int s = idx / l_;
    int l = idx % l_;
    PartyId j = w_list_[static_cast<size_t>(s)];
    shares.v.push_back(ext_x_[static_cast<size_t>(l)][static_cast<size_t>(j)]);
    shares.v.push_back(ext_y_[static_cast<size_t>(l)][static_cast<size_t>(j)]);
    shares.v.push_back(ext_z_[static_cast<size_t>(l)][static_cast<size_t>(j)]);
  }
  suspect_oec_.emplace(&rt_.field(), &rt_.points(), rt_.params().t_s,
                       rt_.params().t_s, mask_all(rt_.params().n),
                       static_cast<int>(shares.v.size()));
  rt_.send_all(tag_, Body{MsgKind::OecShare, kSuspectChan, 0, Value{std::move(shares)}});
  for (auto& [from, vals] : early_suspect_) suspect_oec_->step(from, vals);
  early_suspect_.clear();
  if (suspect_oec_->done()) on_suspect_done();
}

void TripShInst::on_suspect_done() {
  const Field& f = rt_.field();
  auto vals = suspect_oec_->values(f);
  for (size_t k = 0; k < flagged_.size(); ++k) {
    Fe x = vals[3 * k], y = vals[3 * k + 1], z = vals[3 * k + 2];
    if (f.mul(x, y) != z)
      batch_bad_[static_cast<size_t>(flagged_[k] % l_)] = true;
  }
  finalize();
}

void TripShInst::finalize() {
  if (finalized_) return;
  finalized_ = true;
  const Field& f = rt_.field();
  const EvalPoints& pts = rt_.points();
  int t_s = rt_.params().t_s;
  Fe beta = pts.beta(0);
  std::vector<Fe> head_x(pts.alphas.begin(), pts.alphas.begin() + (t_s + 1));
  std::vector<Fe> head_z(pts.alphas.begin(), pts.alphas.begin() + (2 * t_s + 1));
  auto lx = lagrange_point_coeffs(f, head_x, beta);
  auto lz = lagrange_point_coeffs(f, head_z, beta);
  out_.assign(static_cast<size_t>(3 * l_), 0);
  for (int l = 0; l < l_; ++l) {
    if (batch_bad_[static_cast<size_t>(l)]) continue;  // default zero sharing
    TripTransInst* tr = trans_[static_cast<size_t>(l)];
    Fe a = 0, b = 0, c = 0;
    for (int k = 0; k <= t_s; ++k) {
      a = f.add(a, f.mul(lx[static_cast<size_t>(k)], tr->xs()[static_cast<size_t>(k)]));
      b = f.add(b, f.mul(lx[static_cast<size_t>(k)], tr->ys()[static_cast<size_t>(k)]));
    }
    for (int k = 0; k < 2 * t_s + 1; ++k)
      c = f.add(c, f.mul(lz[static_cast<size_t>(k)], tr->zs()[static_cast<size_t>(k)]));
    out_[static_cast<size_t>(3 * l)] = a;
    out_[static_cast<size_t>(3 * l + 1)] = b;
    out_[static_cast<size_t>(3 * l + 2)] = c;
  }
  try_emit();
}

void TripShInst::try_emit() {
  if (emitted_ || !finalized_) return;
  if (rt_.now() < anchor_ + rt_.schedule().t_tripsh) return;
  emitted_ = true;
  out_time_ = rt_.now();
  rt_.log_output(tag_, OutputRec{0, Value{}, out_, 0});
  if (notify_) notify_();
}

void TripShInst::on_timer(int which, int) {
  if (which == kEmitTripSh) try_emit();
}

// --- Preprocessing ---

namespace {
enum PreprocTimer { kBeginBa = 1, kExtract = 2, kEmitPre = 3 };
}

PreprocInst::PreprocInst(PartyRuntime& rt, TagId tag, Time anchor, int c_m,
                         std::function<void()> notify)
    : Instance(rt, tag), anchor_(anchor), c_m_(c_m), notify_(std::move(notify)) {
  int n = rt.params().n;
  int t_s = rt.params().t_s;
  d_ = (n - t_s - 1) / 2;
  yield_ = d_ + 1 - t_s;
  l_ = (c_m + yield_ - 1) / yield_;
}

void PreprocInst::start() {
  World& w = rt_.world();
  int n = rt_.params().n;
  const Schedule& sc = rt_.schedule();
  tripsh_.resize(static_cast<size_t>(n));
  ba_.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    tripsh_[static_cast<size_t>(j)] = rt_.spawn<TripShInst>(
        w.tag_child(tag_, Kind::TripSh, j), anchor_, j, l_,
        [this] { on_tripsh_update(); });
  for (int j = 0; j < n; ++j)
    ba_[static_cast<size_t>(j)] =
        rt_.spawn<BaInst>(w.tag_child(tag_, Kind::Ba, j), anchor_ + sc.t_tripsh,
                          rt_.params().t_s, [this] { on_ba_update(); });
  // dealer-side input: L*(2t_s+1) random multiplication triples
  const Field& f = rt_.field();
  int t_s = rt_.params().t_s;
  std::vector<std::array<Fe, 3>> trips;
  trips.reserve(static_cast<size_t>(l_ * (2 * t_s + 1)));
  for (int i = 0; i < l_ * (2 * t_s + 1); ++i) {
    Fe a = rt_.rng().next_fe(f);
    Fe b = rt_.rng().next_fe(f);
    trips.push_back({a, b, f.mul(a, b)});
  }
  tripsh_[static_cast<size_t>(rt_.id())]->set_input(trips);
  rt_.set_timer(tag_, kBeginBa, 0, anchor_ + sc.t_tripsh);
  rt_.set_timer(tag_, kExtract, 0, anchor_ + sc.t_tripsh + 2 * sc.t_ba);
  rt_.set_timer(tag_, kEmitPre, 0, anchor_ + sc.t_tripgen);
}

void PreprocInst::give_one(PartyId j) {
  if (mask_has(input_given_, j)) return;
  input_given_ |= mask_bit(j);
  ba_[static_cast<size_t>(j)]->set_input(1);
}

void PreprocInst::on_tripsh_update() {
  if (begun_) {
    int n = rt_.params().n;
    for (int j = 0; j < n; ++j)
      if (tripsh_[static_cast<size_t>(j)]->has_output()) give_one(j);
  }
  try_extract();
}

void PreprocInst::on_ba_update() {
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  int ones = 0, decided = 0;
  for (int j = 0; j < n; ++j) {
    const auto& o = ba_[static_cast<size_t>(j)]->output();
    if (o) {
      ++decided;
      if (*o == 1) ++ones;
    }
  }
  if (!zero_wave_ && ones >= n - t_s) {
    zero_wave_ = true;
    for (int j = 0; j < n; ++j)
      if (!mask_has(input_given_, j)) {
        input_given_ |= mask_bit(j);
        ba_[static_cast<size_t>(j)]->set_input(0);
      }
  }
  if (decided == n && !cs_ready_) {
    cs_ready_ = true;
    // the first n - t_s providers with a positive decision
    int want = n - t_s;
    for (int j = 0; j < n && static_cast<int>(cs_list_.size()) < want; ++j)
      if (ba_[static_cast<size_t>(j)]->output() == 1) {
        cs_ |= mask_bit(j);
        cs_list_.push_back(j);
      }
  }
  try_extract();
}

void PreprocInst::on_timer(int which, int) {
  if (which == kBeginBa) {
    begun_ = true;
    on_tripsh_update();
    return;
  }
  if (which == kExtract) {
    try_extract();
    return;
  }
  if (which == kEmitPre) try_emit();
}

void PreprocInst::try_extract() {
  if (extracting_ || !cs_ready_) return;
  const Schedule& sc = rt_.schedule();
  if (rt_.now() < anchor_ + sc.t_tripsh + 2 * sc.t_ba) return;
  int m = 2 * d_ + 1;
  for (int k = 0; k < m; ++k)
    if (!tripsh_[static_cast<size_t>(cs_list_[static_cast<size_t>(k)])]->has_output())
      return;
  extracting_ = true;
  World& w = rt_.world();
  trans_.resize(static_cast<size_t>(l_));
  for (int l = 0; l < l_; ++l) {
    std::vector<std::array<Fe, 3>> trip(static_cast<size_t>(m));
    for (int k = 0; k < m; ++k) {
      const auto& sh = tripsh_[static_cast<size_t>(cs_list_[static_cast<size_t>(k)])]->out_shares();
      trip[static_cast<size_t>(k)] = {sh[static_cast<size_t>(3 * l)],
                                      sh[static_cast<size_t>(3 * l + 1)],
                                      sh[static_cast<size_t>(3 * l + 2)]};
    }
    trans_[static_cast<size_t>(l)] = rt_.spawn<TripTransInst>(
        w.tag_child(tag_, Kind::TripTrans, l), d_, [this] { on_trans_done(); });
    trans_[static_cast<size_t>(l)]->set_input(trip);
  }
  on_trans_done();
}

void PreprocInst::on_trans_done() {
  if (ready_ || !extracting_) return;
  for (auto* t : trans_)
    if (!t->has_output()) return;
  ready_ = true;
  const Field& f = rt_.field();
  const EvalPoints& pts = rt_.points();
  std::vector<Fe> head_x(pts.alphas.begin(), pts.alphas.begin() + (d_ + 1));
  std::vector<Fe> head_z(pts.alphas.begin(), pts.alphas.begin() + (2 * d_ + 1));
  out_.clear();
  for (int l = 0; l < l_ && static_cast<int>(out_.size()) < 3 * c_m_; ++l) {
    TripTransInst* tr = trans_[static_cast<size_t>(l)];
    for (int j = 0; j < yield_ && static_cast<int>(out_.size()) < 3 * c_m_; ++j) {
      Fe beta = pts.beta(1 + j);
      auto lx = lagrange_point_coeffs(f, head_x, beta);
      auto lz = lagrange_point_coeffs(f, head_z, beta);
      Fe a = 0, b = 0, c = 0;
      for (int k = 0; k <= d_; ++k) {
        a = f.add(a, f.mul(lx[static_cast<size_t>(k)], tr->xs()[static_cast<size_t>(k)]));
        b = f.add(b, f.mul(lx[static_cast<size_t>(k)], tr->ys()[static_cast<size_t>(k)]));
      }
      for (int k = 0; k < 2 * d_ + 1; ++k)
        c = f.add(c, f.mul(lz[static_cast<size_t>(k)], tr->zs()[static_cast<size_t>(k)]));
      out_.push_back(a);
      out_.push_back(b);
      out_.push_back(c);
    }
  }
  try_emit();
}

void PreprocInst::try_emit() {
  if (emitted_ || !ready_) return;
  if (rt_.now() < anchor_ + rt_.schedule().t_tripgen) return;
  emitted_ = true;
  out_time_ = rt_.now();
  rt_.log_output(tag_, OutputRec{0, Value{}, out_, 0});
  if (notify_) notify_();
}

}  // namespace bobmpc

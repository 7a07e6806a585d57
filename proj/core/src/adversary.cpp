#include "bobmpc/sim/adversary.hpp"

#include <algorithm>

#include "bobmpc/bivar.hpp"

namespace bobmpc {

namespace {

Kind tag_kind(World& w, TagId t) { return w.tags().info(t).kind; }

// Walks up the tag path looking for a kind.
bool under_kind(World& w, TagId t, Kind k) {
  while (t >= 0) {
    if (w.tags().info(t).kind == k) return true;
    t = w.tags().info(t).parent;
  }
  return false;
}

struct PassiveAdversary : Adversary {
  std::string name() const override { return "passive"; }
};

struct SilentAdversary : Adversary {
  void rewrite(World&, const Message&, std::vector<SendIntercept>&) override {}
  std::string name() const override { return "silent"; }
};

struct CrashLateAdversary : Adversary {
  Time crash_at = 0;
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (w.now() < crash_at) out.push_back({m, 0});
  }
  std::string name() const override { return "crash_late"; }
};

// Corrupt broadcast senders equivocate at the Acast init layer: one value
// to even receivers, a second value to odd receivers.
struct SplitValueAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.body.kind == MsgKind::AcastInit && (m.receiver & 1)) {
      Message alt = m;
      if (const auto* u = std::get_if<std::uint64_t>(&m.body.value))
        alt.body.value = Value{*u ^ 1ULL};
      else if (const auto* fv = std::get_if<FeVec>(&m.body.value)) {
        FeVec copy = *fv;
        if (!copy.v.empty())
          copy.v[0] = w.field().add(copy.v[0], 1);
        alt.body.value = Value{std::move(copy)};
      } else {
        alt.body.value = Value{std::uint64_t{1}};
      }
      out.push_back({std::move(alt), 0});
      return;
    }
    out.push_back({m, 0});
  }
  std::string name() const override { return "split_value"; }
};

// Corrupt dealers send the upper half of the parties rows from a second,
// independently random symmetric bivariate polynomial (per instance tag),
// so the two halves are pairwise inconsistent across the cut.
struct SplitDealerAdversary : Adversary {
  std::unordered_map<TagId, std::vector<SymBivar>> alt_polys;

  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.body.kind == MsgKind::Rows && m.receiver >= w.params().n / 2) {
      const auto* fv = std::get_if<FeVec>(&m.body.value);
      if (fv) {
        int t_s = w.params().t_s;
        int per = t_s + 1;
        int l_count = static_cast<int>(fv->v.size()) / per;
        auto it = alt_polys.find(m.tag);
        if (it == alt_polys.end()) {
          std::vector<SymBivar> ps;
          for (int l = 0; l < l_count; ++l) {
            Poly q = Poly::zero(t_s);
            for (auto& c : q.coeffs()) c = w.adv_rng().next_fe(w.field());
            ps.push_back(SymBivar::embed_random(w.field(), q, t_s, w.adv_rng()));
          }
          it = alt_polys.emplace(m.tag, std::move(ps)).first;
        }
        Message alt = m;
        FeVec rows;
        for (int l = 0; l < l_count; ++l) {
          Poly row = it->second[static_cast<size_t>(l)].row_at(
              w.field(), w.points().alpha(m.receiver));
          for (int c = 0; c < per; ++c) rows.v.push_back(row.coeff(c));
        }
        alt.body.value = Value{std::move(rows)};
        out.push_back({std::move(alt), 0});
        return;
      }
    }
    out.push_back({m, 0});
  }
  std::string name() const override { return "split_dealer"; }
};

// Corrupt dealers deliver rows only to the lowest-index t_s+1 parties.
struct SelectiveSilenceAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.body.kind == MsgKind::Rows && m.receiver > w.params().t_s) return;
    out.push_back({m, 0});
  }
  std::string name() const override { return "selective_silence"; }
};

struct LateDealerAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    out.push_back({m, 4 * w.params().delta});
  }
  std::string name() const override { return "late_dealer"; }
};

// Corrupt dealers announce different stars to different receivers (the
// consistent-broadcast layer is what must defeat this).
struct EquivocateStarAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.body.kind == MsgKind::AcastInit &&
        std::holds_alternative<StarWEF>(m.body.value) && (m.receiver & 1)) {
      Message alt = m;
      StarWEF s = std::get<StarWEF>(m.body.value);
      // drop the highest member of F (and W) in the alternate version
      for (int i = w.params().n - 1; i >= 0; --i)
        if (mask_has(s.f, i) && !mask_has(s.e, i)) {
          s.f &= ~mask_bit(i);
          s.w &= ~mask_bit(i);
          break;
        }
      alt.body.value = Value{s};
      out.push_back({std::move(alt), 0});
      return;
    }
    out.push_back({m, 0});
  }
  std::string name() const override { return "equivocate_star"; }
};

// Corrupt triple-sharing dealers shift the z-polynomial constant of every
// shared triple by one, so c != a*b for every triple they deal.
struct BadTripleAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.body.kind == MsgKind::Rows && under_kind(w, m.tag, Kind::TripSh) &&
        tag_kind(w, m.tag) == Kind::Vss) {
      const auto* fv = std::get_if<FeVec>(&m.body.value);
      if (fv) {
        int per = w.params().t_s + 1;
        int polys = static_cast<int>(fv->v.size()) / per;
        Message alt = m;
        FeVec copy = *fv;
        // poly layout per batch: x, y, z repeated; bump every z row const
        for (int pidx = 2; pidx < polys; pidx += 3)
          copy.v[static_cast<size_t>(pidx * per)] =
              w.field().add(copy.v[static_cast<size_t>(pidx * per)], 1);
        alt.body.value = Value{std::move(copy)};
        out.push_back({std::move(alt), 0});
        return;
      }
    }
    out.push_back({m, 0});
  }
  std::string name() const override { return "bad_triple"; }
};

// Corrupt parties never talk to the upper half of the party set.
struct DropHalfAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    if (m.receiver >= w.params().n / 2) return;
    out.push_back({m, 0});
  }
  std::string name() const override { return "drop_half"; }
};

struct CoinFailAdversary : Adversary {
  bool want_coin_failure(World&, TagId) override { return true; }
  std::string name() const override { return "coin_fail"; }
};

// Adds one to every field element a corrupt party sends.
struct TamperAdversary : Adversary {
  void rewrite(World& w, const Message& m,
               std::vector<SendIntercept>& out) override {
    Message alt = m;
    if (auto* fv = std::get_if<FeVec>(&alt.body.value))
      for (auto& x : fv->v) x = w.field().add(x, 1);
    else if (auto* nk = std::get_if<NokVal>(&alt.body.value))
      nk->v = w.field().add(nk->v, 1);
    out.push_back({std::move(alt), 0});
  }
  std::string name() const override { return "tamper"; }
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(const std::string& name, Mask corrupt,
                                          const Params& params) {
  std::unique_ptr<Adversary> a;
  if (name == "none")
    a = std::make_unique<Adversary>();
  else if (name == "passive")
    a = std::make_unique<PassiveAdversary>();
  else if (name == "silent")
    a = std::make_unique<SilentAdversary>();
  else if (name == "crash_late") {
    auto c = std::make_unique<CrashLateAdversary>();
    c->crash_at = 3 * params.delta;
    a = std::move(c);
  } else if (name == "split_value")
    a = std::make_unique<SplitValueAdversary>();
  else if (name == "split_dealer")
    a = std::make_unique<SplitDealerAdversary>();
  else if (name == "selective_silence")
    a = std::make_unique<SelectiveSilenceAdversary>();
  else if (name == "late_dealer")
    a = std::make_unique<LateDealerAdversary>();
  else if (name == "equivocate_star")
    a = std::make_unique<EquivocateStarAdversary>();
  else if (name == "bad_triple")
    a = std::make_unique<BadTripleAdversary>();
  else if (name == "drop_half")
    a = std::make_unique<DropHalfAdversary>();
  else if (name == "coin_fail")
    a = std::make_unique<CoinFailAdversary>();
  else if (name == "tamper")
    a = std::make_unique<TamperAdversary>();
  else
    return nullptr;
  a->corrupt = corrupt;
  return a;
}

bool adversary_known(const std::string& name) {
  Params p;
  return make_adversary(name, 0, p) != nullptr;
}

std::vector<std::string> adversary_names() {
  return {"none",        "passive",        "silent",
          "crash_late",  "split_value",    "split_dealer",
          "selective_silence", "late_dealer", "equivocate_star",
          "drop_half",   "bad_triple",     "coin_fail",
          "tamper"};
}

}  // namespace bobmpc

#include <array>
#include <set>

#include "doctest.h"

#include "bobmpc/protocols/triples.hpp"
#include "support/harness.hpp"

using namespace bobmpc;
using namespace bobmpc::harness;

namespace {

// Deals a sharing and hands each party its share through a setter.
struct Dealt {
  Sharing sh;
  Fe secret;
};

Dealt deal(World& w, Rng& rng, Fe secret) {
  Dealt d;
  d.secret = w.field().reduce(secret);
  d.sh = deal_sharing(w.field(), w.points(), w.params().t_s, d.secret, rng);
  return d;
}

Fe rec(World& w, const std::vector<Fe>& shares, Mask who) {
  Sharing s;
  s.degree = w.params().t_s;
  s.shares = shares;
  return reconstruct(w.field(), w.points(), s, who);
}

}  // namespace

TEST_CASE("beaver computes the product exactly when the triple multiplies") {
  Rng rng(71);
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 71);
  for (int it = 0; it < 20; ++it) {
    auto tw = make_world<BeaverInst>(p, "none", 0, Kind::Beaver);
    World& w = *tw.w;
    Fe x = rng.next_fe(w.field()), y = rng.next_fe(w.field());
    Fe a = rng.next_fe(w.field()), b = rng.next_fe(w.field());
    bool good = it % 3 != 0;
    Fe c = good ? w.field().mul(a, b) : w.field().add(w.field().mul(a, b), 1);
    Dealt dx = deal(w, rng, x), dy = deal(w, rng, y), da = deal(w, rng, a),
          db = deal(w, rng, b), dc = deal(w, rng, c);
    for (int i = 0; i < 5; ++i)
      tw.inst<BeaverInst>(i)->set_input(dx.sh.shares[static_cast<size_t>(i)],
                                        dy.sh.shares[static_cast<size_t>(i)],
                                        da.sh.shares[static_cast<size_t>(i)],
                                        db.sh.shares[static_cast<size_t>(i)],
                                        dc.sh.shares[static_cast<size_t>(i)]);
    tw.w->run();
    std::vector<Fe> zsh;
    for (int i = 0; i < 5; ++i) {
      REQUIRE(tw.inst<BeaverInst>(i)->has_output());
      zsh.push_back(tw.inst<BeaverInst>(i)->z_share());
    }
    Fe z = rec(w, zsh, mask_all(5));
    // z - xy always equals c - ab
    Fe lhs = w.field().sub(z, w.field().mul(x, y));
    Fe rhs = w.field().sub(c, w.field().mul(a, b));
    CHECK(lhs == rhs);
    if (good) CHECK(z == w.field().mul(x, y));
    // the zero triple is the identity case
    if (it == 0) CHECK(tw.inst<BeaverInst>(0)->has_output());
  }
}

TEST_CASE("beaver with the zero triple reveals x and y as d and e") {
  Rng rng(72);
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 72);
  auto tw = make_world<BeaverInst>(p, "none", 0, Kind::Beaver);
  World& w = *tw.w;
  Fe x = 6, y = 9;
  Dealt dx = deal(w, rng, x), dy = deal(w, rng, y);
  Dealt za = deal(w, rng, 0), zb = deal(w, rng, 0), zc = deal(w, rng, 0);
  for (int i = 0; i < 5; ++i)
    tw.inst<BeaverInst>(i)->set_input(dx.sh.shares[static_cast<size_t>(i)],
                                      dy.sh.shares[static_cast<size_t>(i)],
                                      za.sh.shares[static_cast<size_t>(i)],
                                      zb.sh.shares[static_cast<size_t>(i)],
                                      zc.sh.shares[static_cast<size_t>(i)]);
  tw.w->run();
  std::vector<Fe> zsh;
  for (int i = 0; i < 5; ++i) {
    CHECK(tw.inst<BeaverInst>(i)->e_value() == x);
    CHECK(tw.inst<BeaverInst>(i)->d_value() == y);
    zsh.push_back(tw.inst<BeaverInst>(i)->z_share());
  }
  CHECK(rec(w, zsh, mask_all(5)) == w.field().mul(x, y));
}

TEST_CASE("triple transformation preserves per-index multiplicativity") {
  Rng rng(73);
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 73);
  int d = 1;
  for (int bad_idx = -1; bad_idx < 3; ++bad_idx) {
    auto tw = make_world<TripTransInst>(p, "none", 0, Kind::TripTrans, d);
    World& w = *tw.w;
    std::vector<Fe> xs, ys, zs;
    std::vector<Dealt> dealt_x, dealt_y, dealt_z;
    for (int i = 0; i < 2 * d + 1; ++i) {
      Fe a = rng.next_fe(w.field()), b = rng.next_fe(w.field());
      Fe c = w.field().mul(a, b);
      if (i == bad_idx) c = w.field().add(c, 3);
      xs.push_back(a);
      ys.push_back(b);
      zs.push_back(c);
      dealt_x.push_back(deal(w, rng, a));
      dealt_y.push_back(deal(w, rng, b));
      dealt_z.push_back(deal(w, rng, c));
    }
    for (int i = 0; i < 5; ++i) {
      std::vector<std::array<Fe, 3>> in;
      for (int k = 0; k < 2 * d + 1; ++k)
        in.push_back({dealt_x[static_cast<size_t>(k)].sh.shares[static_cast<size_t>(i)],
                      dealt_y[static_cast<size_t>(k)].sh.shares[static_cast<size_t>(i)],
                      dealt_z[static_cast<size_t>(k)].sh.shares[static_cast<size_t>(i)]});
      tw.inst<TripTransInst>(i)->set_input(in);
    }
    tw.w->run();
    // reconstruct all transformed triples and check the iff per index
    for (int k = 0; k < 2 * d + 1; ++k) {
      std::vector<Fe> xa, ya, za;
      for (int i = 0; i < 5; ++i) {
        REQUIRE(tw.inst<TripTransInst>(i)->has_output());
        auto tr = tw.inst<TripTransInst>(i)->triple(k);
        xa.push_back(tr[0]);
        ya.push_back(tr[1]);
        za.push_back(tr[2]);
      }
      Fe X = rec(*tw.w, xa, mask_all(5));
      Fe Y = rec(*tw.w, ya, mask_all(5));
      Fe Z = rec(*tw.w, za, mask_all(5));
      bool in_mult = k != bad_idx;
      CHECK((w.field().mul(X, Y) == Z) == in_mult);
      if (k == bad_idx && k >= d + 1) {
        // beaver error propagation: z = xy + (c - ab)
        Fe err = w.field().sub(zs[static_cast<size_t>(k)],
                               w.field().mul(xs[static_cast<size_t>(k)], ys[static_cast<size_t>(k)]));
        CHECK(w.field().sub(Z, w.field().mul(X, Y)) == err);
      }
    }
    // copied head: first d+1 equal the inputs
    for (int k = 0; k <= d; ++k) {
      std::vector<Fe> xa;
      for (int i = 0; i < 5; ++i) xa.push_back(tw.inst<TripTransInst>(i)->triple(k)[0]);
      CHECK(rec(*tw.w, xa, mask_all(5)) == xs[static_cast<size_t>(k)]);
    }
  }
}

TEST_CASE("tripsh honest dealer sync: multiplicative output at t_tripsh") {
  for (int l : {1, 2}) {
    Params p = small_params(5, 1, 1, 101, NetMode::Sync, 74);
    p.event_budget = 80'000'000;
    auto tw = make_world<TripShInst>(p, "none", 0, Kind::TripSh, Time{0}, PartyId{0}, l);
    Rng rng(74);
    std::vector<std::array<Fe, 3>> trips;
    for (int i = 0; i < l * 3; ++i) {
      Fe a = rng.next_fe(tw.w->field());
      Fe b = rng.next_fe(tw.w->field());
      trips.push_back({a, b, tw.w->field().mul(a, b)});
    }
    tw.inst<TripShInst>(0)->set_input(trips);
    auto res = tw.w->run(all_honest_output(tw.root));
    REQUIRE(res.reason == RunResult::Reason::Stopped);
    for (int i = 0; i < 5; ++i) {
      REQUIRE(tw.inst<TripShInst>(i)->has_output());
      CHECK(tw.inst<TripShInst>(i)->output_time() == tw.w->schedule().t_tripsh);
    }
    for (int ell = 0; ell < l; ++ell) {
      Fe a = 0, b = 0, c = 0;
      CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * ell, &a));
      CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * ell + 1, &b));
      CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * ell + 2, &c));
      CHECK(tw.w->field().mul(a, b) == c);
      CHECK(a != 0);  // honest output is not the default triple
    }
  }
}

TEST_CASE("tripsh corrupt dealer with a bad triple falls back to the default") {
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 75);
  p.event_budget = 80'000'000;
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("bad_triple", mask_bit(0), p));
  tw.root = tw.w->root_tag(Kind::TripSh);
  for (int i = 0; i < 5; ++i)
    tw.w->party(i).spawn<TripShInst>(tw.root, Time{0}, PartyId{0}, 1);
  Rng rng(75);
  std::vector<std::array<Fe, 3>> trips;
  for (int i = 0; i < 3; ++i) {
    Fe a = rng.next_fe(tw.w->field());
    Fe b = rng.next_fe(tw.w->field());
    trips.push_back({a, b, tw.w->field().mul(a, b)});
  }
  tw.inst<TripShInst>(0)->set_input(trips);
  auto res = tw.w->run(all_honest_output(tw.root));
  REQUIRE(res.reason == RunResult::Reason::Stopped);
  for (int i = 1; i < 5; ++i) {
    REQUIRE(tw.inst<TripShInst>(i)->has_output());
    for (Fe s : tw.inst<TripShInst>(i)->out_shares()) CHECK(s == 0);
  }
}

TEST_CASE("tripsh survives a corrupt supervisor with a bad verification triple") {
  // the corrupt party tampers its own sharing traffic, which poisons its
  // verification triple; the suspected triple is opened, passes, and the
  // honest dealer's output stands
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 76);
  p.event_budget = 80'000'000;
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("tamper", mask_bit(4), p));
  tw.root = tw.w->root_tag(Kind::TripSh);
  for (int i = 0; i < 5; ++i)
    tw.w->party(i).spawn<TripShInst>(tw.root, Time{0}, PartyId{0}, 1);
  Rng rng(76);
  std::vector<std::array<Fe, 3>> trips;
  for (int i = 0; i < 3; ++i) {
    Fe a = rng.next_fe(tw.w->field());
    Fe b = rng.next_fe(tw.w->field());
    trips.push_back({a, b, tw.w->field().mul(a, b)});
  }
  tw.inst<TripShInst>(0)->set_input(trips);
  auto res = tw.w->run(all_honest_output(tw.root));
  REQUIRE(res.reason == RunResult::Reason::Stopped);
  Fe a = 0, b = 0, c = 0;
  CHECK(reconstruct_output_secret(*tw.w, tw.root, 0, &a));
  CHECK(reconstruct_output_secret(*tw.w, tw.root, 1, &b));
  CHECK(reconstruct_output_secret(*tw.w, tw.root, 2, &c));
  CHECK(tw.w->field().mul(a, b) == c);
}

TEST_CASE("preprocessing yields multiplicative random triples at t_tripgen") {
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 77);
  p.event_budget = 200'000'000;
  int c_m = 2;
  auto tw = make_world<PreprocInst>(p, "none", 0, Kind::Preproc, Time{0}, c_m);
  auto res = tw.w->run(all_honest_output(tw.root));
  REQUIRE(res.reason == RunResult::Reason::Stopped);
  for (int i = 0; i < 5; ++i) {
    REQUIRE(tw.inst<PreprocInst>(i)->has_output());
    CHECK(tw.inst<PreprocInst>(i)->output_time() == tw.w->schedule().t_tripgen);
    CHECK(static_cast<int>(tw.inst<PreprocInst>(i)->out_shares().size()) == 3 * c_m);
  }
  for (int tri = 0; tri < c_m; ++tri) {
    Fe a = 0, b = 0, c = 0;
    CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * tri, &a));
    CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * tri + 1, &b));
    CHECK(reconstruct_output_secret(*tw.w, tw.root, 3 * tri + 2, &c));
    CHECK(tw.w->field().mul(a, b) == c);
  }
}

TEST_CASE("preprocessing arity: n=8 yields one triple per batch") {
  Params p = small_params(8, 2, 1, 1009, NetMode::Sync, 78);
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("none", 0, p));
  tw.root = tw.w->root_tag(Kind::Preproc);
  PreprocInst* one = tw.w->party(0).spawn<PreprocInst>(tw.root, Time{0}, 4);
  CHECK(one->yield_per_batch() == 1);
  CHECK(one->batches() == 4);
}

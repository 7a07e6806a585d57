#include <set>

#include "doctest.h"

#include "bobmpc/protocols/vss.hpp"
#include "support/harness.hpp"

using namespace bobmpc;
using namespace bobmpc::harness;

namespace {

std::vector<Poly> random_inputs(const Field& f, Rng& rng, int l, int t_s) {
  std::vector<Poly> polys;
  for (int i = 0; i < l; ++i) {
    Poly q = Poly::zero(t_s);
    for (auto& c : q.coeffs()) c = rng.next_fe(f);
    polys.push_back(q);
  }
  return polys;
}

// Checks the commitment property on a finished sharing instance: honest
// outputs (if any) all lie on one degree-<=t_s polynomial per batch; when
// the dealer is honest that polynomial is the dealer's input.
template <class Inst>
void check_commitment(World& w, TagId root, const std::vector<Poly>* dealt,
                      int l_count, int min_holders) {
  const Field& f = w.field();
  int holders = 0;
  for (int p = 0; p < w.params().n; ++p) {
    if (!mask_has(w.honest_mask(), p)) continue;
    auto* inst = static_cast<Inst*>(w.party(p).find(root));
    if (inst->has_output()) ++holders;
  }
  CHECK(holders >= min_holders);
  if (holders == 0) return;
  for (int l = 0; l < l_count; ++l) {
    std::vector<std::pair<Fe, Fe>> pts;
    for (int p = 0; p < w.params().n; ++p) {
      if (!mask_has(w.honest_mask(), p)) continue;
      auto* inst = static_cast<Inst*>(w.party(p).find(root));
      if (inst->has_output())
        pts.emplace_back(w.points().alpha(p), inst->shares()[static_cast<size_t>(l)]);
    }
    if (static_cast<int>(pts.size()) <= w.params().t_s) continue;
    Poly q;
    REQUIRE_NOTHROW(q = interpolate(f, pts, w.params().t_s));
    if (dealt) CHECK(q.equals(f, (*dealt)[static_cast<size_t>(l)]));
  }
}

}  // namespace

TEST_CASE("wps honest dealer sync: every party outputs its point at t_wps") {
  for (int l : {1, 3}) {
    Params p = small_params(5, 1, 1, 101, NetMode::Sync, 51);
    auto tw = make_world<WpsInst>(p, "none", 0, Kind::Wps, Time{0}, PartyId{0}, l);
    Rng rng(5);
    auto polys = random_inputs(tw.w->field(), rng, l, p.t_s);
    tw.inst<WpsInst>(0)->set_input(polys);
    auto res = tw.w->run(all_honest_output(tw.root));
    REQUIRE(res.reason == RunResult::Reason::Stopped);
    for (int i = 0; i < 5; ++i) {
      WpsInst* inst = tw.inst<WpsInst>(i);
      REQUIRE(inst->has_output());
      CHECK(inst->output_time() == tw.w->schedule().t_wps);
      CHECK(inst->branch() == 0);
      for (int q = 0; q < l; ++q)
        CHECK(inst->shares()[static_cast<size_t>(q)] ==
              polys[static_cast<size_t>(q)].eval(tw.w->field(), tw.w->points().alpha(i)));
    }
  }
}

TEST_CASE("wps honest dealer with a silent corrupt party still meets t_wps") {
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 52);
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("silent", mask_bit(4), p));
  tw.root = tw.w->root_tag(Kind::Wps);
  for (int i = 0; i < 5; ++i)
    tw.w->party(i).spawn<WpsInst>(tw.root, Time{0}, PartyId{0}, 1);
  Rng rng(6);
  auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
  tw.inst<WpsInst>(0)->set_input(polys);
  auto res = tw.w->run(all_honest_output(tw.root));
  REQUIRE(res.reason == RunResult::Reason::Stopped);
  for (int i = 0; i < 4; ++i) {
    CHECK(tw.inst<WpsInst>(i)->output_time() == tw.w->schedule().t_wps);
    CHECK(tw.inst<WpsInst>(i)->shares()[0] ==
          polys[0].eval(tw.w->field(), tw.w->points().alpha(i)));
  }
}

TEST_CASE("wps honest dealer async: everyone eventually outputs the right point") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Params p = small_params(5, 1, 1, 101, NetMode::Async, seed);
    p.async_max_delay = 5;
    p.coin_p = Rational{1, 1};
    p.event_budget = 20'000'000;
    auto tw = make_world<WpsInst>(p, "none", 0, Kind::Wps, Time{0}, PartyId{2}, 1);
    Rng rng(seed);
    auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
    tw.inst<WpsInst>(2)->set_input(polys);
    auto res = tw.w->run(all_honest_output(tw.root));
    REQUIRE(res.reason == RunResult::Reason::Stopped);
    for (int i = 0; i < 5; ++i)
      CHECK(tw.inst<WpsInst>(i)->shares()[0] ==
            polys[0].eval(tw.w->field(), tw.w->points().alpha(i)));
  }
}

TEST_CASE("wps split dealer sync: weak commitment holds") {
  // dealer hands the two halves rows of different bivariate polynomials
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 53);
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("split_dealer", mask_bit(0), p));
  tw.root = tw.w->root_tag(Kind::Wps);
  for (int i = 0; i < 5; ++i)
    tw.w->party(i).spawn<WpsInst>(tw.root, Time{0}, PartyId{0}, 1);
  Rng rng(7);
  auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
  tw.inst<WpsInst>(0)->set_input(polys);
  tw.w->run();
  check_commitment<WpsInst>(*tw.w, tw.root, nullptr, 1, 0);
}

TEST_CASE("vss honest dealer sync: all shares at exactly t_vss") {
  for (int l : {1, 2}) {
    Params p = small_params(5, 1, 1, 101, NetMode::Sync, 54);
    auto tw = make_world<VssInst>(p, "none", 0, Kind::Vss, Time{0}, PartyId{0}, l);
    Rng rng(8);
    auto polys = random_inputs(tw.w->field(), rng, l, p.t_s);
    tw.inst<VssInst>(0)->set_input(polys);
    auto res = tw.w->run(all_honest_output(tw.root));
    REQUIRE(res.reason == RunResult::Reason::Stopped);
    for (int i = 0; i < 5; ++i) {
      VssInst* inst = tw.inst<VssInst>(i);
      REQUIRE(inst->has_output());
      CHECK(inst->output_time() == tw.w->schedule().t_vss);
      for (int q = 0; q < l; ++q)
        CHECK(inst->shares()[static_cast<size_t>(q)] ==
              polys[static_cast<size_t>(q)].eval(tw.w->field(), tw.w->points().alpha(i)));
    }
  }
}

TEST_CASE("vss honest dealer sync with silent corrupt party") {
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 55);
  auto tw = TestWorld{};
  tw.w = std::make_unique<World>(p, make_adversary("silent", mask_bit(3), p));
  tw.root = tw.w->root_tag(Kind::Vss);
  for (int i = 0; i < 5; ++i)
    tw.w->party(i).spawn<VssInst>(tw.root, Time{0}, PartyId{1}, 1);
  Rng rng(9);
  auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
  tw.inst<VssInst>(1)->set_input(polys);
  auto res = tw.w->run(all_honest_output(tw.root));
  REQUIRE(res.reason == RunResult::Reason::Stopped);
  for (int i = 0; i < 5; ++i) {
    if (i == 3) continue;
    CHECK(tw.inst<VssInst>(i)->output_time() == tw.w->schedule().t_vss);
    CHECK(tw.inst<VssInst>(i)->shares()[0] ==
          polys[0].eval(tw.w->field(), tw.w->points().alpha(i)));
  }
}

TEST_CASE("vss corrupt dealer strategies: strong commitment with small spread") {
  for (const char* strategy :
       {"split_dealer", "selective_silence", "late_dealer", "equivocate_star",
        "silent", "tamper"}) {
    CAPTURE(strategy);
    Params p = small_params(5, 1, 1, 101, NetMode::Sync, 56);
    p.event_budget = 20'000'000;
    auto tw = TestWorld{};
    tw.w = std::make_unique<World>(p, make_adversary(strategy, mask_bit(0), p));
    tw.root = tw.w->root_tag(Kind::Vss);
    for (int i = 0; i < 5; ++i)
      tw.w->party(i).spawn<VssInst>(tw.root, Time{0}, PartyId{0}, 1);
    Rng rng(10);
    auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
    tw.inst<VssInst>(0)->set_input(polys);
    tw.w->run();
    // strong commitment: either nobody outputs or everyone does, on one
    // polynomial, within 2 delta of each other
    int holders = 0;
    Time first = -1, last = -1;
    for (int i = 1; i < 5; ++i) {
      VssInst* inst = tw.inst<VssInst>(i);
      if (!inst->has_output()) continue;
      ++holders;
      Time ot = inst->output_time();
      first = first < 0 ? ot : std::min(first, ot);
      last = std::max(last, ot);
    }
    CHECK((holders == 0 || holders == 4));
    if (holders == 4) {
      CHECK(last - first <= 2 * p.delta);
      check_commitment<VssInst>(*tw.w, tw.root, nullptr, 1, 4);
    }
  }
}

TEST_CASE("vss corrupt dealer async: any output forces all outputs") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Params p = small_params(5, 1, 1, 101, NetMode::Async, seed);
    p.async_max_delay = 5;
    p.event_budget = 30'000'000;
    auto tw = TestWorld{};
    tw.w = std::make_unique<World>(p, make_adversary("split_dealer", mask_bit(2), p));
    tw.root = tw.w->root_tag(Kind::Vss);
    for (int i = 0; i < 5; ++i)
      tw.w->party(i).spawn<VssInst>(tw.root, Time{0}, PartyId{2}, 1);
    Rng rng(seed + 60);
    auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
    tw.inst<VssInst>(2)->set_input(polys);
    tw.w->run();
    int holders = 0;
    for (int i = 0; i < 5; ++i) {
      if (i == 2) continue;
      if (tw.inst<VssInst>(i)->has_output()) ++holders;
    }
    CHECK((holders == 0 || holders == 4));
    if (holders == 4) check_commitment<VssInst>(*tw.w, tw.root, nullptr, 1, 4);
  }
}

TEST_CASE("honest parties never accuse one another") {
  Params p = small_params(5, 1, 1, 101, NetMode::Sync, 57);
  p.transcript_level = 2;
  auto tw = make_world<VssInst>(p, "none", 0, Kind::Vss, Time{0}, PartyId{0}, 1);
  Rng rng(11);
  auto polys = random_inputs(tw.w->field(), rng, 1, p.t_s);
  tw.inst<VssInst>(0)->set_input(polys);
  tw.w->run(all_honest_output(tw.root));
  // scan every broadcast output for NOK values between honest parties
  for (int i = 0; i < 5; ++i)
    for (TagId t = 0; t < tw.w->tags().size(); ++t) {
      const auto* outs = tw.w->party(i).outputs(t);
      if (!outs) continue;
      for (const auto& rec : *outs)
        if (const auto* nok = std::get_if<NokVal>(&rec.value)) {
          CAPTURE(nok->i);
          CHECK(false);
        }
    }
}

#include "doctest.h"

#include "bobmpc/config.hpp"
#include "bobmpc/sim/adversary.hpp"

using namespace bobmpc;

TEST_CASE("config parsing round trip") {
  RunConfig cfg;
  std::string err = parse_config(
      "n=5\nt_s=1\nt_a=1\nprime=101\ndelta=1\nmode=async\nscheduler=lifo\n"
      "adversary=split_dealer\ncorrupt=2\ncoin_p=1/4\nk_aba=20\nseed=99\n"
      "event_budget=1000\ntranscript=full\nrecord_wires=1\n# comment\n\n",
      cfg);
  CHECK(err.empty());
  CHECK(cfg.params.n == 5);
  CHECK(cfg.params.mode == NetMode::Async);
  CHECK(cfg.params.sched == SchedKind::LifoStarve);
  CHECK(cfg.adversary == "split_dealer");
  CHECK(cfg.params.coin_p.num == 1);
  CHECK(cfg.params.coin_p.den == 4);
  CHECK(cfg.params.seed == 99);
  CHECK(cfg.params.transcript_level == 2);
  CHECK(cfg.params.record_wires);
  CHECK(cfg.corrupt_set() == mask_bit(2));
  CHECK(cfg.params.validate().empty());
}

TEST_CASE("config rejects malformed input and bad bounds") {
  RunConfig cfg;
  CHECK(!parse_config("bogus\n", cfg).empty());
  CHECK(!parse_config("unknown_key=1\n", cfg).empty());
  CHECK(!parse_config("mode=slow\n", cfg).empty());

  RunConfig c2;
  CHECK(parse_config("n=4\nt_s=1\nt_a=1\n", c2).empty());
  CHECK(!c2.params.validate().empty());  // 3*1+1 == 4 violates the bound

  RunConfig c3;
  CHECK(parse_config("n=5\nt_s=1\nt_a=1\nprime=100\n", c3).empty());
  CHECK(!c3.params.validate().empty());  // 100 is not prime

  RunConfig c4;
  CHECK(parse_config("n=5\nt_s=1\nt_a=1\ncoin_p=0\n", c4).empty());
  CHECK(!c4.params.validate().empty());
}

TEST_CASE("decimal coin probabilities become exact rationals") {
  Rational r;
  CHECK(parse_rational("0.25", r).empty());
  CHECK(r.num * 4 == r.den);
  CHECK(parse_rational("1", r).empty());
  CHECK(r.num == r.den);
  CHECK(!parse_rational("x", r).empty());
}

TEST_CASE("auto corruption picks the mode bound; every name is registered") {
  RunConfig cfg;
  CHECK(parse_config("n=8\nt_s=2\nt_a=1\nadversary=silent\nmode=sync\n", cfg).empty());
  CHECK(mask_count(cfg.corrupt_set()) == 2);
  cfg.params.mode = NetMode::Async;
  CHECK(mask_count(cfg.corrupt_set()) == 1);
  for (const auto& name : adversary_names()) {
    CAPTURE(name);
    CHECK(adversary_known(name));
    auto adv = make_adversary(name, 1, cfg.params);
    REQUIRE(adv != nullptr);
    CHECK(adv->name() == (name == "none" ? "none" : name));
  }
  CHECK(!adversary_known("not_a_strategy"));
  std::string err;
  cfg.corrupt = "0,1,2";
  cfg.params.mode = NetMode::Sync;
  (void)cfg.corrupt_set(&err);
  CHECK(!err.empty());  // exceeds t_s = 2
}

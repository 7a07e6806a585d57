#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

#include "bobmpc/field.hpp"
#include "bobmpc/rng.hpp"
#include "bobmpc/sharing.hpp"
#include "bobmpc/sim/tags.hpp"
#include "bobmpc/sim/value.hpp"

namespace bobmpc {

using Time = std::int64_t;

enum class NetMode { Sync, Async };
enum class SchedKind { FairRandom, LifoStarve, Programmable };

struct Rational {
  std::uint64_t num = 1, den = 4;  // coin success probability, default 1/4
};

struct Params {
  int n = 4;
  int t_s = 1;
  int t_a = 0;
  Fe prime = Field::kDefaultPrime;
  Time delta = 1;
  NetMode mode = NetMode::Sync;
  bool sync_jitter = false;  // uniform (0, delta] instead of exactly delta
  SchedKind sched = SchedKind::FairRandom;
  Time async_max_delay = 0;  // 0: use 4*delta
  PartyId starve_victim = 0;
  std::int64_t starve_budget = 200;
  int k_aba = 20;  // coin duration c = k_aba - 19 deltas
  Rational coin_p;
  int coin_budget = -1;  // -1: t_s * (n - t_s)
  std::uint64_t seed = 1;
  std::uint64_t event_budget = 50'000'000;
  int transcript_level = 1;  // 0 off, 1 outputs, 2 full
  bool record_wires = false;

  std::string validate() const;  // empty string when ok
};

// All the protocol deadlines, in ticks, derived from (n, delta, k).
struct Schedule {
  Time delta = 1;
  Time t_bgp = 0, t_bc = 0, t_aba = 0, t_ba = 0;
  Time t_wps = 0, t_vss = 0, t_acs = 0, t_tripsh = 0, t_tripgen = 0;

  static Schedule make(int n, Time delta, int k_aba) {
    Schedule s;
    s.delta = delta;
    s.t_bgp = (12 * n - 6) * delta;
    s.t_bc = 3 * delta + s.t_bgp;
    s.t_aba = k_aba * delta;
    s.t_ba = s.t_bc + s.t_aba;
    s.t_wps = 2 * delta + 2 * s.t_bc + s.t_ba;
    s.t_vss = delta + s.t_wps + 2 * s.t_bc + s.t_ba;
    s.t_acs = s.t_vss + 2 * s.t_ba;
    s.t_tripsh = s.t_acs + 4 * delta;
    s.t_tripgen = s.t_tripsh + 2 * s.t_ba + delta;
    return s;
  }

  Time grid_up(Time t) const {  // smallest multiple of delta >= t
    return ((t + delta - 1) / delta) * delta;
  }
};

enum class MsgKind : std::uint8_t {
  AcastInit,
  AcastEcho,
  AcastReady,
  SbaRound,
  Rows,
  Points,
  OecShare,
  AbaReady,
  MpcReady,
};

struct Body {
  MsgKind kind = MsgKind::AcastInit;
  std::int32_t a = 0;
  std::int32_t b = 0;
  Value value{};
};

struct Message {
  PartyId sender = 0;
  PartyId receiver = 0;
  TagId tag = 0;
  Time send_time = 0;
  Body body;
};

struct OutputRec {
  Time time = 0;
  Value value{};
  std::vector<Fe> fes;
  int info = 0;
};

struct TranscriptRec {
  char type;  // 'S' send, 'D' deliver, 'O' output, 'T' terminate, 'I' input
  Time time;
  PartyId a;
  PartyId b;
  TagId tag;
  std::uint64_t digest;
};

class World;
class PartyRuntime;

class Instance {
 public:
  Instance(PartyRuntime& rt, TagId tag) : rt_(rt), tag_(tag) {}
  virtual ~Instance() = default;
  virtual void start() {}
  virtual void on_message(PartyId from, const Body& body) {}
  virtual void on_timer(int which, int arg) {}
  TagId tag() const { return tag_; }

 protected:
  PartyRuntime& rt_;
  TagId tag_;
};

class Adversary;

class PartyRuntime {
 public:
  PartyRuntime(World& w, PartyId me, std::uint64_t rng_seed)
      : w_(&w), me_(me), rng_(rng_seed) {}

  PartyId id() const { return me_; }
  World& world() { return *w_; }
  Time now() const;
  const Params& params() const;
  const Field& field() const;
  const EvalPoints& points() const;
  const Schedule& schedule() const;
  Rng& rng() { return rng_; }
  bool killed() const { return killed_; }

  void send(PartyId to, TagId tag, Body body);
  void send_all(TagId tag, const Body& body);
  void set_timer(TagId tag, int which, int arg, Time at);

  Instance* find(TagId tag) {
    return tag < static_cast<TagId>(slots_.size()) ? slots_[static_cast<size_t>(tag)].get()
                                                   : nullptr;
  }

  // Buffered messages for a freshly spawned instance are replayed only
  // after the current event dispatch unwinds, so notify callbacks never see
  // a half-constructed parent.
  template <class T, class... Args>
  T* spawn(TagId tag, Args&&... args) {
    if (find(tag)) return static_cast<T*>(find(tag));
    if (tag >= static_cast<TagId>(slots_.size())) slots_.resize(static_cast<size_t>(tag) + 1);
    auto inst = std::make_unique<T>(*this, tag, std::forward<Args>(args)...);
    T* raw = inst.get();
    slots_[static_cast<size_t>(tag)] = std::move(inst);
    raw->start();
    flush_queue_.push_back(tag);
    if (dispatch_depth_ == 0) drain_flush();
    return raw;
  }

  void log_output(TagId tag, OutputRec rec);
  const std::vector<OutputRec>* outputs(TagId tag) const {
    auto it = outputs_.find(tag);
    return it == outputs_.end() ? nullptr : &it->second;
  }

  // Protocol input events (e.g. agreement votes), for transcript checks.
  void log_input(TagId tag, const Value& v);
  const std::vector<std::pair<Time, Value>>* inputs(TagId tag) const {
    auto it = inputs_.find(tag);
    return it == inputs_.end() ? nullptr : &it->second;
  }

  void deliver(const Message& m);
  void fire_timer(TagId tag, int which, int arg);
  void kill() { killed_ = true; }

 private:
  void flush_pending(TagId tag);
  void drain_flush();

  World* w_;
  PartyId me_;
  Rng rng_;
  bool killed_ = false;
  int dispatch_depth_ = 0;
  std::vector<TagId> flush_queue_;
  std::vector<std::unique_ptr<Instance>> slots_;
  std::unordered_map<TagId, std::vector<std::pair<PartyId, Body>>> pending_;
  std::unordered_map<TagId, std::vector<OutputRec>> outputs_;
  std::unordered_map<TagId, std::vector<std::pair<Time, Value>>> inputs_;

  friend class World;
};

struct RunResult {
  enum class Reason { Stopped, Quiescent, BudgetExhausted };
  Reason reason = Reason::Quiescent;
  std::uint64_t events = 0;
  Time end_time = 0;
};

struct LayerCounter {
  std::uint64_t messages = 0;
  std::uint64_t field_elements = 0;
};

class World {
 public:
  World(Params params, std::unique_ptr<Adversary> adversary);
  ~World();

  const Params& params() const { return par_; }
  const Field& field() const { return field_; }
  const EvalPoints& points() const { return pts_; }
  const Schedule& schedule() const { return sched_; }
  TagTable& tags() { return tags_; }
  const TagTable& tags() const { return tags_; }
  Time now() const { return now_; }
  Adversary& adversary() { return *adv_; }
  Mask corrupt_mask() const;
  Mask honest_mask() const;

  PartyRuntime& party(PartyId p) { return *parties_[static_cast<size_t>(p)]; }
  const PartyRuntime& party(PartyId p) const { return *parties_[static_cast<size_t>(p)]; }

  TagId tag_child(TagId parent, Kind kind, int index) {
    return tags_.intern(parent, kind, index);
  }
  TagId root_tag(Kind kind, int index = 0) { return tags_.intern(-1, kind, index); }

  // Spawns the same root instance at every party.
  template <class T, class... Args>
  void spawn_all(TagId tag, Args&&... args) {
    for (auto& p : parties_) p->spawn<T>(tag, args...);
  }

  RunResult run(const std::function<bool(const World&)>& stop = nullptr);

  void kill_party(PartyId p);
  bool party_killed(PartyId p) const { return parties_[static_cast<size_t>(p)]->killed(); }

  // Common coin oracle: the per-party value for one coin instance,
  // resolved once per tag, adversary consulted while its budget lasts.
  Fe coin_value(TagId coin_tag, PartyId p);
  int coin_failures() const { return coin_failures_; }

  const std::vector<TranscriptRec>& transcript() const { return transcript_; }
  std::string export_transcript() const;
  static constexpr int kKindCount = static_cast<int>(Kind::CirEval) + 1;
  const std::array<LayerCounter, kKindCount>& counters() const { return counters_; }
  std::uint64_t events_processed() const { return events_; }

  // Wire-share log for degree checks: (party, wire) -> share.
  void log_wire(PartyId p, int wire, Fe share);
  const std::vector<std::vector<Fe>>& wire_log() const { return wires_; }

  Rng& adv_rng() { return adv_rng_; }

 private:
  struct Event {
    Time time;
    int klass;  // 0 delivery, 1 timer
    std::uint64_t seq;
    Message msg;        // klass 0
    PartyId party = 0;  // klass 1
    TagId tag = 0;
    int which = 0;
    int arg = 0;
  };
  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.klass != b.klass) return a.klass > b.klass;
      return a.seq > b.seq;
    }
  };

  void enqueue_message(Message m, Time extra_delay);
  Time pick_delay(const Message& m);
  void record(char type, Time t, PartyId a, PartyId b, TagId tag,
              std::uint64_t digest);

  Params par_;
  Field field_;
  EvalPoints pts_;
  Schedule sched_;
  TagTable tags_;
  std::unique_ptr<Adversary> adv_;
  std::vector<std::unique_ptr<PartyRuntime>> parties_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  std::uint64_t seq_ = 0;
  Time now_ = 0;
  std::uint64_t events_ = 0;
  Rng sched_rng_;
  Rng coin_rng_;
  Rng adv_rng_;
  std::int64_t starve_budget_left_ = 0;

  struct CoinRec {
    std::vector<Fe> per_party;
  };
  std::unordered_map<TagId, CoinRec> coins_;
  int coin_budget_left_ = 0;
  int coin_failures_ = 0;

  std::vector<TranscriptRec> transcript_;
  std::array<LayerCounter, kKindCount> counters_{};
  std::vector<std::vector<Fe>> wires_;

  friend class PartyRuntime;
};

}  // namespace bobmpc

#include "bobmpc/sim/world.hpp"

#include <sstream>

#include "bobmpc/sim/adversary.hpp"

namespace bobmpc {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Root: return "root";
    case Kind::Acast: return "acast";
    case Kind::Sba: return "sba";
    case Kind::Bc: return "bc";
    case Kind::Vote: return "vote";
    case Kind::Coin: return "coin";
    case Kind::Aba: return "aba";
    case Kind::Ba: return "ba";
    case Kind::Wps: return "wps";
    case Kind::Vss: return "vss";
    case Kind::Acs: return "acs";
    case Kind::Beaver: return "beaver";
    case Kind::TripTrans: return "triptrans";
    case Kind::TripSh: return "tripsh";
    case Kind::Preproc: return "preproc";
    case Kind::CirEval: return "cireval";
  }
  return "?";
}

std::string TagTable::path(TagId id) const {
  if (id < 0) return "";
  const Info& i = info(id);
  std::string head = i.parent < 0 ? std::string() : path(i.parent) + "/";
  return head + kind_name(i.kind) + "." + std::to_string(i.index);
}

namespace {
std::uint64_t fnv(std::uint64_t h, std::uint64_t x) {
  for (int i = 0; i < 8; ++i) {
    h ^= (x >> (8 * i)) & 0xff;
    h *= 1099511628211ULL;
  }
  return h;
}
}  // namespace

std::uint64_t value_digest(const Value& v) {
  std::uint64_t h = 14695981039346656037ULL;
  h = fnv(h, v.index());
  switch (v.index()) {
    case 0: break;
    case 1: h = fnv(h, std::get<std::uint64_t>(v)); break;
    case 2: {
      auto& o = std::get<OkVal>(v);
      h = fnv(h, static_cast<std::uint64_t>(o.i) << 32 | static_cast<std::uint32_t>(o.j));
      break;
    }
    case 3: {
      auto& o = std::get<NokVal>(v);
      h = fnv(h, static_cast<std::uint64_t>(o.i) << 32 | static_cast<std::uint32_t>(o.j));
      h = fnv(h, static_cast<std::uint64_t>(o.ell));
      h = fnv(h, o.v);
      break;
    }
    case 4: {
      auto& o = std::get<StarWEF>(v);
      h = fnv(h, static_cast<std::uint64_t>(o.w) << 32 | o.e);
      h = fnv(h, o.f);
      break;
    }
    case 5: {
      auto& o = std::get<StarEF>(v);
      h = fnv(h, static_cast<std::uint64_t>(o.e) << 32 | o.f);
      break;
    }
    case 6: {
      auto& o = std::get<VoteSet>(v);
      h = fnv(h, static_cast<std::uint64_t>(o.members) << 32 | o.bits);
      h = fnv(h, o.maj);
      break;
    }
    case 7: {
      auto& o = std::get<FeVec>(v);
      h = fnv(h, o.v.size());
      for (Fe x : o.v) h = fnv(h, x);
      break;
    }
  }
  return h;
}

int value_fe_count(const Value& v) {
  if (std::holds_alternative<NokVal>(v)) return 1;
  if (const auto* fv = std::get_if<FeVec>(&v)) return static_cast<int>(fv->v.size());
  return 0;
}

std::string Params::validate() const {
  if (n < 2 || n > 20) return "n out of range [2,20]";
  if (t_s < 0 || t_a < 0) return "negative corruption bound";
  if (t_a > t_s) return "t_a must be <= t_s";
  if (3 * t_s + t_a >= n) return "requires 3*t_s + t_a < n";
  if (!is_prime_u64(prime)) return "prime is not prime";
  if (prime <= static_cast<Fe>(2 * n)) return "prime must exceed 2n";
  if (delta <= 0) return "delta must be positive";
  if (k_aba < 20) return "k_aba must be at least 20";
  if (coin_p.num == 0 || coin_p.num > coin_p.den) return "coin_p must be in (0,1]";
  if (transcript_level < 0 || transcript_level > 2) return "transcript level 0..2";
  return "";
}

Time PartyRuntime::now() const { return w_->now(); }
const Params& PartyRuntime::params() const { return w_->params(); }
const Field& PartyRuntime::field() const { return w_->field(); }
const EvalPoints& PartyRuntime::points() const { return w_->points(); }
const Schedule& PartyRuntime::schedule() const { return w_->schedule(); }

void PartyRuntime::send(PartyId to, TagId tag, Body body) {
  if (killed_) return;
  Message m;
  m.sender = me_;
  m.receiver = to;
  m.tag = tag;
  m.send_time = w_->now();
  m.body = std::move(body);
  if (w_->adv_ && w_->adv_->is_corrupt(me_)) {
    std::vector<SendIntercept> out;
    w_->adv_->rewrite(*w_, m, out);
    for (auto& si : out) w_->enqueue_message(std::move(si.msg), si.extra_delay);
  } else {
    w_->enqueue_message(std::move(m), 0);
  }
}

void PartyRuntime::send_all(TagId tag, const Body& body) {
  for (int j = 0; j < w_->params().n; ++j) send(j, tag, body);
}

void PartyRuntime::set_timer(TagId tag, int which, int arg, Time at) {
  if (killed_) return;
  World::Event ev;
  ev.time = at < w_->now() ? w_->now() : at;
  ev.klass = 1;
  ev.seq = w_->seq_++;
  ev.party = me_;
  ev.tag = tag;
  ev.which = which;
  ev.arg = arg;
  w_->queue_.push(std::move(ev));
}

void PartyRuntime::log_output(TagId tag, OutputRec rec) {
  rec.time = w_->now();
  if (w_->par_.transcript_level >= 1)
    w_->record('O', rec.time, me_, -1, tag, value_digest(rec.value));
  outputs_[tag].push_back(std::move(rec));
}

void PartyRuntime::log_input(TagId tag, const Value& v) {
  if (w_->par_.transcript_level >= 1)
    w_->record('I', w_->now(), me_, -1, tag, value_digest(v));
  inputs_[tag].emplace_back(w_->now(), v);
}

void PartyRuntime::deliver(const Message& m) {
  if (killed_) return;
  Instance* inst = find(m.tag);
  if (inst) {
    ++dispatch_depth_;
    inst->on_message(m.sender, m.body);
    --dispatch_depth_;
    if (dispatch_depth_ == 0) drain_flush();
  } else {
    pending_[m.tag].emplace_back(m.sender, m.body);
  }
}

void PartyRuntime::fire_timer(TagId tag, int which, int arg) {
  if (killed_) return;
  if (Instance* inst = find(tag)) {
    ++dispatch_depth_;
    inst->on_timer(which, arg);
    --dispatch_depth_;
    if (dispatch_depth_ == 0) drain_flush();
  }
}

void PartyRuntime::flush_pending(TagId tag) {
  auto it = pending_.find(tag);
  if (it == pending_.end()) return;
  auto msgs = std::move(it->second);
  pending_.erase(it);
  Instance* inst = find(tag);
  for (auto& [from, body] : msgs) inst->on_message(from, body);
}

void PartyRuntime::drain_flush() {
  ++dispatch_depth_;  // replayed messages may spawn more instances
  size_t i = 0;
  while (i < flush_queue_.size()) {
    TagId tag = flush_queue_[i++];
    flush_pending(tag);
  }
  flush_queue_.clear();
  --dispatch_depth_;
}

World::World(Params params, std::unique_ptr<Adversary> adversary)
    : par_(params),
      field_(params.prime),
      pts_(EvalPoints::make(field_, params.n, params.n + 1)),
      sched_(Schedule::make(params.n, params.delta, params.k_aba)),
      adv_(std::move(adversary)),
      sched_rng_(params.seed * 0x9e3779b97f4a7c15ULL + 1),
      coin_rng_(params.seed * 0xbf58476d1ce4e5b9ULL + 2),
      adv_rng_(params.seed * 0x94d049bb133111ebULL + 3) {
  if (!adv_) adv_ = std::make_unique<Adversary>();
  Rng seeder(par_.seed);
  parties_.reserve(static_cast<size_t>(par_.n));
  for (int p = 0; p < par_.n; ++p)
    parties_.push_back(std::make_unique<PartyRuntime>(
        *this, p, seeder.fork(static_cast<std::uint64_t>(p)).next_u64()));
  starve_budget_left_ = par_.starve_budget;
  coin_budget_left_ =
      par_.coin_budget >= 0 ? par_.coin_budget : par_.t_s * (par_.n - par_.t_s);
  if (par_.record_wires) wires_.resize(static_cast<size_t>(par_.n));
}

World::~World() = default;

Mask World::corrupt_mask() const { return adv_->corrupt; }
Mask World::honest_mask() const {
  return mask_all(par_.n) & ~adv_->corrupt;
}

Time World::pick_delay(const Message& m) {
  if (par_.mode == NetMode::Sync) {
    if (!par_.sync_jitter) return par_.delta;
    return 1 + static_cast<Time>(sched_rng_.next_below(
                   static_cast<std::uint64_t>(par_.delta)));
  }
  Time max_delay = par_.async_max_delay > 0 ? par_.async_max_delay : 4 * par_.delta;
  switch (par_.sched) {
    case SchedKind::FairRandom:
      return 1 + static_cast<Time>(sched_rng_.next_below(
                     static_cast<std::uint64_t>(max_delay)));
    case SchedKind::LifoStarve:
      if ((m.receiver == par_.starve_victim || m.sender == par_.starve_victim) &&
          starve_budget_left_ > 0) {
        --starve_budget_left_;
        return 8 * max_delay;
      }
      return 1 + static_cast<Time>(sched_rng_.next_below(
                     static_cast<std::uint64_t>(max_delay)));
    case SchedKind::Programmable:
      return adv_->pick_delay(*this, m, max_delay);
  }
  return par_.delta;
}

void World::enqueue_message(Message m, Time extra_delay) {
  if (m.receiver < 0 || m.receiver >= par_.n) return;
  auto& lc = counters_[static_cast<size_t>(tags_.info(m.tag).kind)];
  lc.messages += 1;
  lc.field_elements += static_cast<std::uint64_t>(value_fe_count(m.body.value));
  if (par_.transcript_level >= 2)
    record('S', now_, m.sender, m.receiver, m.tag, value_digest(m.body.value));
  Event ev;
  ev.time = now_ + pick_delay(m) + (extra_delay > 0 ? extra_delay : 0);
  ev.klass = 0;
  ev.seq = seq_++;
  ev.msg = std::move(m);
  queue_.push(std::move(ev));
}

void World::record(char type, Time t, PartyId a, PartyId b, TagId tag,
                   std::uint64_t digest) {
  transcript_.push_back(TranscriptRec{type, t, a, b, tag, digest});
}

RunResult World::run(const std::function<bool(const World&)>& stop) {
  RunResult res;
  while (!queue_.empty()) {
    if (events_ >= par_.event_budget) {
      res.reason = RunResult::Reason::BudgetExhausted;
      res.events = events_;
      res.end_time = now_;
      return res;
    }
    Event ev = queue_.top();
    queue_.pop();
    now_ = ev.time;
    ++events_;
    if (ev.klass == 0) {
      if (par_.transcript_level >= 2)
        record('D', now_, ev.msg.sender, ev.msg.receiver, ev.msg.tag,
               value_digest(ev.msg.body.value));
      parties_[static_cast<size_t>(ev.msg.receiver)]->deliver(ev.msg);
    } else {
      parties_[static_cast<size_t>(ev.party)]->fire_timer(ev.tag, ev.which, ev.arg);
    }
    if (stop && stop(*this)) {
      res.reason = RunResult::Reason::Stopped;
      res.events = events_;
      res.end_time = now_;
      return res;
    }
  }
  res.reason = RunResult::Reason::Quiescent;
  res.events = events_;
  res.end_time = now_;
  return res;
}

void World::kill_party(PartyId p) {
  if (par_.transcript_level >= 1) record('T', now_, p, -1, 0, 0);
  parties_[static_cast<size_t>(p)]->kill();
}

Fe World::coin_value(TagId coin_tag, PartyId p) {
  auto it = coins_.find(coin_tag);
  if (it == coins_.end()) {
    CoinRec rec;
    rec.per_party.resize(static_cast<size_t>(par_.n));
    bool forced = false;
    if (coin_budget_left_ > 0 && adv_->want_coin_failure(*this, coin_tag)) {
      --coin_budget_left_;
      ++coin_failures_;
      forced = true;
      for (int i = 0; i < par_.n; ++i)
        rec.per_party[static_cast<size_t>(i)] = adv_->coin_failure_bit(*this, coin_tag, i);
    }
    if (!forced) {
      bool success = coin_rng_.next_below(par_.coin_p.den) < par_.coin_p.num;
      if (success) {
        Fe common = coin_rng_.next_bool() ? 1 : 0;
        for (auto& v : rec.per_party) v = common;
      } else {
        // Inherent failure: the assignment belongs to the adversary.
        for (int i = 0; i < par_.n; ++i)
          rec.per_party[static_cast<size_t>(i)] =
              adv_->coin_failure_bit(*this, coin_tag, i);
      }
    }
    it = coins_.emplace(coin_tag, std::move(rec)).first;
  }
  return it->second.per_party[static_cast<size_t>(p)];
}

std::string World::export_transcript() const {
  std::ostringstream os;
  for (const auto& r : transcript_)
    os << r.type << ' ' << r.time << ' ' << r.a << ' ' << r.b << ' '
       << tags_.path(r.tag) << ' ' << r.digest << '\n';
  return os.str();
}

void World::log_wire(PartyId p, int wire, Fe share) {
  if (!par_.record_wires) return;
  auto& v = wires_[static_cast<size_t>(p)];
  if (wire >= static_cast<int>(v.size())) v.resize(static_cast<size_t>(wire) + 1, 0);
  v[static_cast<size_t>(wire)] = share;
}

}  // namespace bobmpc

#include "support/harness.hpp"

#include <set>

namespace bobmpc::harness {

Params small_params(int n, int t_s, int t_a, Fe prime, NetMode mode,
                    std::uint64_t seed) {
  Params p;
  p.n = n;
  p.t_s = t_s;
  p.t_a = t_a;
  p.prime = prime;
  p.delta = 1;
  p.mode = mode;
  p.seed = seed;
  p.transcript_level = 1;
  return p;
}

std::function<bool(const World&)> all_honest_output(TagId tag) {
  return [tag](const World& w) {
    for (int p = 0; p < w.params().n; ++p) {
      if (!mask_has(w.honest_mask(), p)) continue;
      const auto* outs = w.party(p).outputs(tag);
      if (!outs || outs->empty()) return false;
    }
    return true;
  };
}

std::function<bool(const World&)> all_honest_terminated() {
  return [](const World& w) {
    for (int p = 0; p < w.params().n; ++p)
      if (mask_has(w.honest_mask(), p) && !w.party_killed(p)) return false;
    return true;
  };
}

Time output_time(const World& w, TagId tag, PartyId p) {
  const auto* outs = w.party(p).outputs(tag);
  return outs && !outs->empty() ? outs->front().time : -1;
}

bool honest_outputs_agree(const World& w, TagId tag) {
  std::set<std::uint64_t> digests;
  for (int p = 0; p < w.params().n; ++p) {
    if (!mask_has(w.honest_mask(), p)) continue;
    const auto* outs = w.party(p).outputs(tag);
    if (!outs || outs->empty()) return false;
    std::uint64_t h = value_digest(outs->front().value);
    for (Fe x : outs->front().fes) h = (h ^ x) * 1099511628211ULL;
    digests.insert(h);
  }
  return digests.size() <= 1;
}

}  // namespace bobmpc::harness

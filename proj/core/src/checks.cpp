#include "bobmpc/checks.hpp"

#include <set>
#include <sstream>

namespace bobmpc {

namespace {

bool want(const std::string& which, const std::string& name) {
  if (which == "all") return true;
  if (which == "none") return false;
  std::istringstream is(which);
  std::string tok;
  while (std::getline(is, tok, ','))
    if (tok == name) return true;
  return false;
}

// Honest share vectors for one output index of a tag, as (alpha, share).
std::vector<std::pair<Fe, Fe>> honest_points(const World& w, TagId tag, int index) {
  std::vector<std::pair<Fe, Fe>> pts;
  for (int p = 0; p < w.params().n; ++p) {
    if (!mask_has(w.honest_mask(), p)) continue;
    const auto* outs = w.party(p).outputs(tag);
    if (!outs || outs->empty()) continue;
    const auto& rec = outs->front();
    if (index >= static_cast<int>(rec.fes.size())) continue;
    pts.emplace_back(w.points().alpha(p), rec.fes[static_cast<size_t>(index)]);
  }
  return pts;
}

bool fits_degree(const World& w, const std::vector<std::pair<Fe, Fe>>& pts,
                 int degree, Fe* secret) {
  if (static_cast<int>(pts.size()) < degree + 1) return false;
  try {
    Poly q = interpolate(w.field(), pts, degree);
    if (secret) *secret = q.eval(w.field(), 0);
    return true;
  } catch (...) {
    return false;
  }
}

}  // namespace

bool reconstruct_output_secret(const World& w, TagId tag, int index, Fe* out) {
  return fits_degree(w, honest_points(w, tag, index), w.params().t_s, out);
}

std::vector<std::string> check_names() {
  return {"bc_agreement", "ba_agreement", "vss_commitment", "acs_common",
          "triples_mult", "one_then_zero", "mpc_output", "wire_degrees"};
}

std::vector<CheckResult> run_checks(const World& w, const std::string& which,
                                    const Circuit* cir) {
  std::vector<CheckResult> results;
  const TagTable& tags = w.tags();
  int n = w.params().n;
  Mask honest = w.honest_mask();

  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    results.push_back(CheckResult{name, pass, detail});
  };

  if (want(which, "bc_agreement")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      if (tags.info(t).kind != Kind::Bc) continue;
      // across honest parties: at most one distinct non-bot output value,
      // and a non-bot regular output is never replaced
      std::set<std::uint64_t> vals;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (!outs) continue;
        bool regular_val = false;
        for (const auto& rec : *outs) {
          if (!is_bot(rec.value)) vals.insert(value_digest(rec.value));
          if (rec.info == 0 && !is_bot(rec.value)) regular_val = true;
          if (rec.info == 1 && regular_val) {
            pass = false;
            detail = "fallback after non-bot regular at " + tags.path(t);
          }
        }
      }
      if (vals.size() > 1) {
        pass = false;
        detail = "two distinct non-bot outputs at " + tags.path(t);
      }
    }
    add("bc_agreement", pass, detail);
  }

  if (want(which, "ba_agreement")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      Kind k = tags.info(t).kind;
      if (k != Kind::Ba && k != Kind::Aba) continue;
      std::set<std::uint64_t> vals;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (outs && !outs->empty()) vals.insert(value_digest(outs->front().value));
      }
      if (vals.size() > 1) {
        pass = false;
        detail = "disagreement at " + tags.path(t);
      }
    }
    add("ba_agreement", pass, detail);
  }

  if (want(which, "vss_commitment")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      Kind k = tags.info(t).kind;
      if (k != Kind::Vss && k != Kind::Wps) continue;
      // find how many values each output carries
      int width = -1;
      int holders = 0;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (outs && !outs->empty()) {
          width = static_cast<int>(outs->front().fes.size());
          ++holders;
        }
      }
      if (width <= 0) continue;
      // commitment: if >= t_s+1 honest holders, every index interpolates
      if (holders >= w.params().t_s + 1) {
        for (int idx = 0; idx < width && pass; ++idx) {
          auto pts = honest_points(w, t, idx);
          if (!fits_degree(w, pts, w.params().t_s, nullptr)) {
            pass = false;
            detail = "inconsistent shares at " + tags.path(t);
          }
        }
      }
    }
    add("vss_commitment", pass, detail);
  }

  if (want(which, "acs_common")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      if (tags.info(t).kind != Kind::Acs) continue;
      std::set<std::uint64_t> vals;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (!outs || outs->empty()) continue;
        Mask cs = static_cast<Mask>(std::get<std::uint64_t>(outs->front().value));
        vals.insert(cs);
        if (mask_count(cs) < n - w.params().t_s) {
          pass = false;
          detail = "subset too small at " + tags.path(t);
        }
        if (w.params().mode == NetMode::Sync && (honest & ~cs) != 0) {
          pass = false;
          detail = "honest party missing from subset at " + tags.path(t);
        }
      }
      if (vals.size() > 1) {
        pass = false;
        detail = "subset disagreement at " + tags.path(t);
      }
    }
    add("acs_common", pass, detail);
  }

  if (want(which, "triples_mult")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      Kind k = tags.info(t).kind;
      if (k != Kind::Preproc && k != Kind::TripSh) continue;
      int width = -1;
      int holders = 0;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (outs && !outs->empty()) {
          width = static_cast<int>(outs->front().fes.size());
          ++holders;
        }
      }
      if (width <= 0 || holders < w.params().t_s + 1) continue;
      for (int tri = 0; tri + 2 < width && pass; tri += 3) {
        Fe a = 0, b = 0, c = 0;
        if (!reconstruct_output_secret(w, t, tri, &a) ||
            !reconstruct_output_secret(w, t, tri + 1, &b) ||
            !reconstruct_output_secret(w, t, tri + 2, &c)) {
          pass = false;
          detail = "bad sharing degree at " + tags.path(t);
          break;
        }
        if (w.field().mul(a, b) != c) {
          pass = false;
          detail = "non-multiplicative triple at " + tags.path(t);
        }
      }
    }
    add("triples_mult", pass, detail);
  }

  if (want(which, "one_then_zero")) {
    // No honest party feeds 0 into a subset-vote before it saw n-t_s ones.
    bool pass = true;
    std::string detail;
    for (int p = 0; p < n && pass; ++p) {
      if (!mask_has(honest, p)) continue;
      for (TagId t = 0; t < tags.size() && pass; ++t) {
        Kind k = tags.info(t).kind;
        if (k != Kind::Ba) continue;
        TagId parent = tags.info(t).parent;
        if (parent < 0) continue;
        Kind pk = tags.info(parent).kind;
        if (pk != Kind::Acs && pk != Kind::Preproc) continue;
        const auto* ins = w.party(p).inputs(t);
        if (!ins || ins->empty()) continue;
        const auto& [time0, val] = ins->front();
        if (std::get<std::uint64_t>(val) != 0) continue;
        // count sibling agreement instances that output 1 at p by time0
        int ones = 0;
        for (TagId s = 0; s < tags.size(); ++s) {
          if (tags.info(s).kind != Kind::Ba || tags.info(s).parent != parent)
            continue;
          const auto* outs = w.party(p).outputs(s);
          if (outs && !outs->empty() && as_bit(outs->front().value) == 1 &&
              outs->front().time <= time0)
            ++ones;
        }
        if (ones < n - w.params().t_s) {
          pass = false;
          detail = "zero vote before quota at " + tags.path(t);
        }
      }
    }
    add("one_then_zero", pass, detail);
  }

  if (want(which, "mpc_output")) {
    bool pass = true;
    std::string detail;
    for (TagId t = 0; t < tags.size() && pass; ++t) {
      if (tags.info(t).kind != Kind::CirEval) continue;
      std::set<Fe> ys;
      Mask cs = 0;
      bool have_cs = false;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto* outs = w.party(p).outputs(t);
        if (outs && !outs->empty())
          ys.insert(w.field().reduce(std::get<std::uint64_t>(outs->front().value)));
        TagId acs_tag = w.tags().find(t, Kind::Acs, 0);
        if (acs_tag < 0) continue;
        const auto* acs_outs = w.party(p).outputs(acs_tag);
        if (acs_outs && !acs_outs->empty() && !have_cs) {
          cs = static_cast<Mask>(std::get<std::uint64_t>(acs_outs->front().value));
          have_cs = true;
        }
      }
      if (ys.size() > 1) {
        pass = false;
        detail = "output disagreement";
        break;
      }
      if (ys.empty()) continue;
      if (cir && have_cs) {
        // reconstruct committed inputs; substitution rule for outsiders
        TagId acs_tag = w.tags().find(t, Kind::Acs, 0);
        if (acs_tag < 0) continue;
        std::vector<Fe> inputs(static_cast<size_t>(n), 0);
        bool ok = true;
        int pos = 0;
        for (int j = 0; j < n; ++j) {
          if (!mask_has(cs, j)) continue;
          Fe v = 0;
          if (!reconstruct_output_secret(w, acs_tag, pos, &v)) ok = false;
          inputs[static_cast<size_t>(j)] = v;
          ++pos;
        }
        if (!ok) {
          pass = false;
          detail = "input sharing reconstruction failed";
          break;
        }
        Fe expect = cir->eval_plain(w.field(), inputs);
        if (*ys.begin() != expect) {
          pass = false;
          detail = "output does not match committed inputs";
        }
      }
    }
    add("mpc_output", pass, detail);
  }

  if (want(which, "wire_degrees") && w.params().record_wires) {
    bool pass = true;
    std::string detail;
    size_t max_w = 0;
    for (int p = 0; p < n; ++p)
      if (mask_has(honest, p)) max_w = std::max(max_w, w.wire_log()[static_cast<size_t>(p)].size());
    for (size_t wi = 0; wi < max_w && pass; ++wi) {
      std::vector<std::pair<Fe, Fe>> pts;
      for (int p = 0; p < n; ++p) {
        if (!mask_has(honest, p)) continue;
        const auto& v = w.wire_log()[static_cast<size_t>(p)];
        if (wi < v.size()) pts.emplace_back(w.points().alpha(p), v[wi]);
      }
      if (static_cast<int>(pts.size()) >= w.params().t_s + 1 &&
          !fits_degree(w, pts, w.params().t_s, nullptr)) {
        pass = false;
        detail = "wire " + std::to_string(wi) + " exceeds degree bound";
      }
    }
    add("wire_degrees", pass, detail);
  }

  return results;
}

}  // namespace bobmpc

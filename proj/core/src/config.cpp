#include "bobmpc/config.hpp"

#include <sstream>

namespace bobmpc {

std::string parse_rational(const std::string& text, Rational& out) {
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      out.num = std::stoull(text.substr(0, slash));
      out.den = std::stoull(text.substr(slash + 1));
    } else if (text.find('.') != std::string::npos) {
      // decimal: scale by a power of ten
      auto dot = text.find('.');
      std::string frac = text.substr(dot + 1);
      std::string whole = text.substr(0, dot);
      if (frac.size() > 9) frac = frac.substr(0, 9);
      std::uint64_t den = 1;
      for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      out.num = std::stoull(whole.empty() ? "0" : whole) * den +
                (frac.empty() ? 0 : std::stoull(frac));
      out.den = den;
    } else {
      out.num = std::stoull(text);
      out.den = 1;
    }
  } catch (...) {
    return "bad rational: " + text;
  }
  if (out.den == 0) return "zero denominator";
  return "";
}

std::string parse_config(const std::string& text, RunConfig& out) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    // trim
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);
    auto eq = line.find('=');
    if (eq == std::string::npos)
      return "line " + std::to_string(lineno) + ": expected key=value";
    std::string key = line.substr(0, eq);
    std::string val = line.substr(eq + 1);
    auto trim = [](std::string& s) {
      auto b2 = s.find_first_not_of(" \t");
      auto e2 = s.find_last_not_of(" \t");
      s = b2 == std::string::npos ? "" : s.substr(b2, e2 - b2 + 1);
    };
    trim(key);
    trim(val);
    try {
      if (key == "n") out.params.n = std::stoi(val);
      else if (key == "t_s") out.params.t_s = std::stoi(val);
      else if (key == "t_a") out.params.t_a = std::stoi(val);
      else if (key == "prime") out.params.prime = std::stoull(val);
      else if (key == "delta") out.params.delta = std::stoll(val);
      else if (key == "mode") {
        if (val == "sync") out.params.mode = NetMode::Sync;
        else if (val == "async") out.params.mode = NetMode::Async;
        else return "mode must be sync or async";
      } else if (key == "scheduler") {
        if (val == "fair") out.params.sched = SchedKind::FairRandom;
        else if (val == "lifo") out.params.sched = SchedKind::LifoStarve;
        else if (val == "adversary") out.params.sched = SchedKind::Programmable;
        else return "scheduler must be fair, lifo or adversary";
      } else if (key == "sync_jitter") out.params.sync_jitter = val == "1" || val == "true";
      else if (key == "adversary") out.adversary = val;
      else if (key == "corrupt") out.corrupt = val;
      else if (key == "coin_p") {
        std::string err = parse_rational(val, out.params.coin_p);
        if (!err.empty()) return err;
      } else if (key == "coin_budget") out.params.coin_budget = std::stoi(val);
      else if (key == "k_aba") out.params.k_aba = std::stoi(val);
      else if (key == "seed") out.params.seed = std::stoull(val);
      else if (key == "event_budget") out.params.event_budget = std::stoull(val);
      else if (key == "async_max_delay") out.params.async_max_delay = std::stoll(val);
      else if (key == "starve_victim") out.params.starve_victim = std::stoi(val);
      else if (key == "starve_budget") out.params.starve_budget = std::stoll(val);
      else if (key == "transcript") {
        if (val == "off") out.params.transcript_level = 0;
        else if (val == "outputs") out.params.transcript_level = 1;
        else if (val == "full") out.params.transcript_level = 2;
        else return "transcript must be off, outputs or full";
      } else if (key == "record_wires") out.params.record_wires = val == "1" || val == "true";
      else if (key == "checks") out.checks = val;
      else return "unknown key '" + key + "'";
    } catch (...) {
      return "bad value for " + key + ": " + val;
    }
  }
  return "";
}

Mask RunConfig::corrupt_set(std::string* err) const {
  if (corrupt == "auto") {
    if (adversary == "none") return 0;
    int t = params.mode == NetMode::Sync ? params.t_s : params.t_a;
    Mask m = 0;
    for (int i = 0; i < t; ++i) m |= mask_bit(i);
    return m;
  }
  Mask m = 0;
  std::istringstream is(corrupt);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    try {
      int p = std::stoi(tok);
      if (p < 0 || p >= params.n) {
        if (err) *err = "corrupt index out of range";
        return 0;
      }
      m |= mask_bit(p);
    } catch (...) {
      if (err) *err = "bad corrupt list";
      return 0;
    }
  }
  int bound = params.mode == NetMode::Sync ? params.t_s : params.t_a;
  if (mask_count(m) > bound) {
    if (err) *err = "corrupt set exceeds the mode's corruption bound";
    return 0;
  }
  return m;
}

}  // namespace bobmpc

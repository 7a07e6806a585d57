#pragma once

#include <string>

#include "bobmpc/sim/world.hpp"

namespace bobmpc {

// Flat key=value experiment configuration (one pair per line, '#' comments).
struct RunConfig {
  Params params;
  std::string adversary = "none";
  std::string corrupt = "auto";  // "auto" or comma-separated indices
  std::string checks = "all";

  // Resolves the corrupt set: "auto" takes the first t_s (sync) or t_a
  // (async) parties when an adversary is configured.
  Mask corrupt_set(std::string* err = nullptr) const;
};

// Parses the text; returns empty string on success, else the error.
std::string parse_config(const std::string& text, RunConfig& out);

std::string parse_rational(const std::string& text, Rational& out);

}  // namespace bobmpc

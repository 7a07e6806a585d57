#pragma once

#include <string>
#include <vector>

#include "bobmpc/field.hpp"

namespace bobmpc {

// Arithmetic circuit over F: n input wires (one per party, wires 0..n-1),
// gates in topological order, one output wire. Line format, bit-exact:
//   n <n> inputs <n> wires <W>
//   add <out> <in1> <in2>
//   addc <out> <in> <const>
//   mulc <out> <in> <const>
//   mul <out> <in1> <in2>
//   output <wire>
struct Circuit {
  enum class Op { Add, AddC, MulC, Mul };
  struct Gate {
    Op op;
    int out;
    int a;
    int b = -1;    // second input wire for add/mul
    Fe c = 0;      // constant for addc/mulc
  };

  int n = 0;
  int wires = 0;
  std::vector<Gate> gates;
  int output_wire = -1;

  int mul_count() const;
  int mul_depth() const;

  // Evaluates in the clear; inputs[i] feeds wire i.
  Fe eval_plain(const Field& f, const std::vector<Fe>& inputs) const;

  std::string serialize() const;

  // Parses and validates; on failure returns false and fills `err`.
  static bool parse(const std::string& text, Circuit& out, std::string& err);
};

}  // namespace bobmpc

#include "bobmpc/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace bobmpc {

int Circuit::mul_count() const {
  int c = 0;
  for (const Gate& g : gates)
    if (g.op == Op::Mul) ++c;
  return c;
}

int Circuit::mul_depth() const {
  std::vector<int> depth(static_cast<size_t>(wires), 0);
  for (const Gate& g : gates) {
    int d = depth[static_cast<size_t>(g.a)];
    if (g.b >= 0) d = std::max(d, depth[static_cast<size_t>(g.b)]);
    if (g.op == Op::Mul) ++d;
    depth[static_cast<size_t>(g.out)] = d;
  }
  return output_wire >= 0 ? depth[static_cast<size_t>(output_wire)] : 0;
}

Fe Circuit::eval_plain(const Field& f, const std::vector<Fe>& inputs) const {
  std::vector<Fe> w(static_cast<size_t>(wires), 0);
  for (int i = 0; i < n; ++i) w[static_cast<size_t>(i)] = f.reduce(inputs[static_cast<size_t>(i)]);
  for (const Gate& g : gates) {
    Fe a = w[static_cast<size_t>(g.a)];
    switch (g.op) {
      case Op::Add: w[static_cast<size_t>(g.out)] = f.add(a, w[static_cast<size_t>(g.b)]); break;
      case Op::AddC: w[static_cast<size_t>(g.out)] = f.add(a, g.c); break;
      case Op::MulC: w[static_cast<size_t>(g.out)] = f.mul(a, g.c); break;
      case Op::Mul: w[static_cast<size_t>(g.out)] = f.mul(a, w[static_cast<size_t>(g.b)]); break;
    }
  }
  return w[static_cast<size_t>(output_wire)];
}

std::string Circuit::serialize() const {
  std::ostringstream os;
  os << "n " << n << " inputs " << n << " wires " << wires << "\n";
  for (const Gate& g : gates) {
    switch (g.op) {
      case Op::Add: os << "add " << g.out << ' ' << g.a << ' ' << g.b << "\n"; break;
      case Op::AddC: os << "addc " << g.out << ' ' << g.a << ' ' << g.c << "\n"; break;
      case Op::MulC: os << "mulc " << g.out << ' ' << g.a << ' ' << g.c << "\n"; break;
      case Op::Mul: os << "mul " << g.out << ' ' << g.a << ' ' << g.b << "\n"; break;
    }
  }
  os << "output " << output_wire << "\n";
  return os.str();
}

bool Circuit::parse(const std::string& text, Circuit& out, std::string& err) {
  out = Circuit{};
  std::istringstream is(text);
  std::string line;
  bool have_header = false;
  bool have_output = false;
  std::vector<bool> defined;
  int lineno = 0;
  auto fail = [&](const std::string& m) {
    err = "line " + std::to_string(lineno) + ": " + m;
    return false;
  };
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank
    if (tok == "#") continue;
    if (!have_header) {
      if (tok != "n") return fail("expected header");
      std::string kw1, kw2;
      int inputs = 0;
      if (!(ls >> out.n >> kw1 >> inputs >> kw2 >> out.wires) || kw1 != "inputs" ||
          kw2 != "wires")
        return fail("bad header");
      if (out.n < 1 || inputs != out.n || out.wires < out.n)
        return fail("bad header counts");
      defined.assign(static_cast<size_t>(out.wires), false);
      for (int i = 0; i < out.n; ++i) defined[static_cast<size_t>(i)] = true;
      have_header = true;
      continue;
    }
    if (have_output) return fail("content after output line");
    auto wire_ok = [&](int w) { return w >= 0 && w < out.wires; };
    auto in_ok = [&](int w) { return wire_ok(w) && defined[static_cast<size_t>(w)]; };
    auto out_ok = [&](int w) {
      return wire_ok(w) && !defined[static_cast<size_t>(w)];
    };
    if (tok == "output") {
      int w;
      if (!(ls >> w) || !in_ok(w)) return fail("bad output wire");
      out.output_wire = w;
      have_output = true;
      continue;
    }
    Gate g{};
    if (tok == "add" || tok == "mul") {
      g.op = tok == "add" ? Op::Add : Op::Mul;
      if (!(ls >> g.out >> g.a >> g.b)) return fail("bad gate");
      if (!out_ok(g.out) || !in_ok(g.a) || !in_ok(g.b)) return fail("bad wires");
    } else if (tok == "addc" || tok == "mulc") {
      g.op = tok == "addc" ? Op::AddC : Op::MulC;
      unsigned long long c;
      if (!(ls >> g.out >> g.a >> c)) return fail("bad gate");
      if (!out_ok(g.out) || !in_ok(g.a)) return fail("bad wires");
      g.c = static_cast<Fe>(c);
    } else {
      return fail("unknown gate '" + tok + "'");
    }
    defined[static_cast<size_t>(g.out)] = true;
    out.gates.push_back(g);
  }
  if (!have_header) {
    err = "empty circuit";
    return false;
  }
  if (!have_output) {
    err = "missing output line";
    return false;
  }
  return true;
}

}  // namespace bobmpc

#include "bobmpc/sharing.hpp"

#include <stdexcept>

namespace bobmpc {

Sharing deal_sharing(const Field& f, const EvalPoints& pts, int degree,
                     Fe secret, Rng& rng) {
  Poly p = Poly::zero(degree);
  p.coeffs()[0] = f.reduce(secret);
  for (int i = 1; i <= degree; ++i) p.coeffs()[static_cast<size_t>(i)] = rng.next_fe(f);
  Sharing s;
  s.degree = degree;
  s.shares.reserve(pts.alphas.size());
  for (Fe a : pts.alphas) s.shares.push_back(p.eval(f, a));
  return s;
}

Sharing linear_combine(const Field& f, const std::vector<Fe>& coeffs,
                       const std::vector<const Sharing*>& ins, Fe constant) {
  if (coeffs.size() != ins.size())
    throw std::invalid_argument("linear_combine: arity mismatch");
  if (ins.empty()) throw std::invalid_argument("linear_combine: no inputs");
  int degree = ins[0]->degree;
  int n = ins[0]->n();
  for (const Sharing* s : ins) {
    if (s->degree != degree)
      throw std::invalid_argument("linear_combine: mixed degrees");
    if (s->n() != n)
      throw std::invalid_argument("linear_combine: mixed party sets");
  }
  Sharing out;
  out.degree = degree;
  out.shares.assign(static_cast<size_t>(n), f.reduce(constant));
  for (size_t k = 0; k < ins.size(); ++k)
    for (int i = 0; i < n; ++i)
      out.shares[static_cast<size_t>(i)] =
          f.add(out.shares[static_cast<size_t>(i)],
                f.mul(coeffs[k], ins[k]->shares[static_cast<size_t>(i)]));
  return out;
}

Poly reconstruct_poly(const Field& f, const EvalPoints& pts, const Sharing& s,
                      Mask who) {
  std::vector<std::pair<Fe, Fe>> points;
  for (int i = 0; i < s.n(); ++i)
    if (mask_has(who, i))
      points.emplace_back(pts.alpha(i), s.shares[static_cast<size_t>(i)]);
  return interpolate(f, points, s.degree);
}

Fe reconstruct(const Field& f, const EvalPoints& pts, const Sharing& s,
               Mask who) {
  return reconstruct_poly(f, pts, s, who).eval(f, 0);
}

std::optional<Poly> OecSession::step(PartyId from, Fe value) {
  if (out_) return out_;
  if (!mask_has(expected_, from) || mask_has(seen_, from)) return std::nullopt;
  seen_ |= mask_bit(from);
  points_.emplace_back(pts_->alpha(from), f_->reduce(value));

  int count = static_cast<int>(points_.size());
  int r = count - (d_ + t_ + 1);
  if (r < 0 || r > t_) return std::nullopt;
  auto q = rs_decode(*f_, d_, r, points_);
  if (!q) return std::nullopt;
  // Output only when supported by d+t+1 received values, so at least d+1
  // honest points pin it down.
  int matches = 0;
  for (auto& [x, y] : points_)
    if (q->eval(*f_, x) == y) ++matches;
  if (matches >= d_ + t_ + 1) out_ = std::move(q);
  return out_;
}

void MultiOec::step(PartyId from, const std::vector<Fe>& values) {
  if (values.size() != sessions_.size()) return;  // malformed, drop
  for (size_t i = 0; i < sessions_.size(); ++i) sessions_[i].step(from, values[i]);
}

bool MultiOec::done() const {
  for (const auto& s : sessions_)
    if (!s.done()) return false;
  return !sessions_.empty();
}

std::vector<Fe> MultiOec::values(const Field& f) const {
  std::vector<Fe> out;
  out.reserve(sessions_.size());
  for (const auto& s : sessions_) out.push_back(s.output()->eval(f, 0));
  return out;
}

}  // namespace bobmpc

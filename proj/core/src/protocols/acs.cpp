#include "bobmpc/protocols/acs.hpp"

namespace bobmpc {

namespace {
enum AcsTimer { kBegin = 1, kEmit = 2 };
}

void AcsInst::start() {
  World& w = rt_.world();
  int n = rt_.params().n;
  const Schedule& sc = rt_.schedule();
  vss_.resize(static_cast<size_t>(n));
  ba_.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j)
    vss_[static_cast<size_t>(j)] =
        rt_.spawn<VssInst>(w.tag_child(tag_, Kind::Vss, j), anchor_, j,
                           l_count_, [this] { on_vss_update(); });
  for (int j = 0; j < n; ++j)
    ba_[static_cast<size_t>(j)] =
        rt_.spawn<BaInst>(w.tag_child(tag_, Kind::Ba, j), anchor_ + sc.t_vss,
                          rt_.params().t_s, [this] { on_ba_update(); });
  rt_.set_timer(tag_, kBegin, 0, anchor_ + sc.t_vss);
  rt_.set_timer(tag_, kEmit, 0, anchor_ + sc.t_acs);
}

void AcsInst::set_input(const std::vector<Poly>& polys) {
  vss_[static_cast<size_t>(rt_.id())]->set_input(polys);
}

void AcsInst::give_one(PartyId j) {
  if (mask_has(input_given_, j)) return;
  input_given_ |= mask_bit(j);
  ba_[static_cast<size_t>(j)]->set_input(1);
}

void AcsInst::on_vss_update() {
  if (begun_) {
    int n = rt_.params().n;
    for (int j = 0; j < n; ++j)
      if (vss_[static_cast<size_t>(j)]->has_output()) give_one(j);
  }
  try_emit();
}

void AcsInst::on_ba_update() {
  int n = rt_.params().n;
  int t_s = rt_.params().t_s;
  int ones = 0, decided = 0;
  for (int j = 0; j < n; ++j) {
    const auto& o = ba_[static_cast<size_t>(j)]->output();
    if (o) {
      ++decided;
      if (*o == 1) ++ones;
    }
  }
  if (!zero_wave_ && ones >= n - t_s) {
    zero_wave_ = true;
    for (int j = 0; j < n; ++j)
      if (!mask_has(input_given_, j)) {
        input_given_ |= mask_bit(j);
        ba_[static_cast<size_t>(j)]->set_input(0);
      }
  }
  if (decided == n && !cs_ready_) {
    cs_ready_ = true;
    cs_ = 0;
    for (int j = 0; j < n; ++j)
      if (ba_[static_cast<size_t>(j)]->output() == 1) cs_ |= mask_bit(j);
  }
  try_emit();
}

void AcsInst::on_timer(int which, int) {
  if (which == kBegin) {
    begun_ = true;
    on_vss_update();
    return;
  }
  if (which == kEmit) try_emit();
}

void AcsInst::try_emit() {
  if (emitted_ || !cs_ready_) return;
  if (rt_.now() < anchor_ + rt_.schedule().t_acs) return;
  int n = rt_.params().n;
  for (int j = 0; j < n; ++j)
    if (mask_has(cs_, j) && !vss_[static_cast<size_t>(j)]->has_output()) return;
  emitted_ = true;
  out_time_ = rt_.now();
  OutputRec rec;
  rec.value = Value{static_cast<std::uint64_t>(cs_)};
  for (int j = 0; j < n; ++j)
    if (mask_has(cs_, j))
      for (Fe s : vss_[static_cast<size_t>(j)]->shares()) rec.fes.push_back(s);
  rt_.log_output(tag_, std::move(rec));
  if (notify_) notify_();
}

}  // namespace bobmpc

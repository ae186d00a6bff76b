#include "eon/slot_grid.hpp"

#include <algorithm>
#include <numeric>

#include "eon/error.hpp"

namespace eon {

SlotGrid::SlotGrid(int slot_count, double slot_width_ghz, int fiber_pairs)
    : slot_count_(slot_count), slot_width_ghz_(slot_width_ghz) {
  if (slot_count <= 0 || slot_width_ghz <= 0.0 || fiber_pairs <= 0) {
    throw SpectrumError("slot grid dimensions must be positive");
  }
  pairs_.assign(static_cast<std::size_t>(fiber_pairs),
                std::vector<std::uint8_t>(static_cast<std::size_t>(slot_count), 0));
}

void SlotGrid::check_range(int pair, int start, int length) const {
  if (pair < 0 || pair >= fiber_pairs() || start < 0 || length <= 0 ||
      start + length > slot_count_) {
    throw SpectrumError("out of range");
  }
}

bool SlotGrid::occupied(int pair, int slot) const {
  check_range(pair, slot, 1);
  return pairs_[static_cast<std::size_t>(pair)][static_cast<std::size_t>(slot)] != 0;
}

bool SlotGrid::is_free(int pair, int start, int length) const {
  if (pair < 0 || pair >= fiber_pairs() || start < 0 || length <= 0 ||
      start + length > slot_count_) {
    return false;
  }
  const auto& bits = pairs_[static_cast<std::size_t>(pair)];
  return std::none_of(bits.begin() + start, bits.begin() + start + length,
                      [](std::uint8_t b) { return b != 0; });
}

void SlotGrid::allocate(int pair, int start, int length) {
  check_range(pair, start, length);
  if (!is_free(pair, start, length)) throw SpectrumError("overlap");
  auto& bits = pairs_[static_cast<std::size_t>(pair)];
  std::fill(bits.begin() + start, bits.begin() + start + length, std::uint8_t{1});
}

void SlotGrid::release(int pair, int start, int length) {
  check_range(pair, start, length);
  auto& bits = pairs_[static_cast<std::size_t>(pair)];
  if (!std::all_of(bits.begin() + start, bits.begin() + start + length,
                   [](std::uint8_t b) { return b != 0; })) {
    throw SpectrumError("release of unoccupied slot");
  }
  std::fill(bits.begin() + start, bits.begin() + start + length, std::uint8_t{0});
}

void SlotGrid::add_fiber_pair() {
  pairs_.emplace_back(static_cast<std::size_t>(slot_count_), 0);
}

std::vector<SlotRun> SlotGrid::free_runs(int pair) const {
  check_range(pair, 0, 1);
  const auto& bits = pairs_[static_cast<std::size_t>(pair)];
  std::vector<SlotRun> runs;
  int s = 0;
  while (s < slot_count_) {
    if (bits[static_cast<std::size_t>(s)] != 0) {
      ++s;
      continue;
    }
    int e = s;
    while (e < slot_count_ && bits[static_cast<std::size_t>(e)] == 0) ++e;
    runs.push_back({s, e - s});
    s = e;
  }
  return runs;
}

std::vector<std::vector<SlotRun>> SlotGrid::contiguous_free_runs() const {
  std::vector<std::vector<SlotRun>> out;
  out.reserve(pairs_.size());
  for (int p = 0; p < fiber_pairs(); ++p) out.push_back(free_runs(p));
  return out;
}

int SlotGrid::occupied_slots() const {
  int n = 0;
  for (const auto& bits : pairs_) {
    n += static_cast<int>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
  }
  return n;
}

double SlotGrid::occupancy_ratio() const {
  return static_cast<double>(occupied_slots()) / static_cast<double>(total_slots());
}

std::vector<std::vector<SlotRun>> contiguous_free_runs(const SlotGrid& grid) {
  return grid.contiguous_free_runs();
}

SlotGrid allocate(SlotGrid grid, int fiber_pair_index, int start, int length) {
  grid.allocate(fiber_pair_index, start, length);
  return grid;
}

double occupancy_ratio(const SlotGrid& grid) { return grid.occupancy_ratio(); }

}  // namespace eon

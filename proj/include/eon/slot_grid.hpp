#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace eon {

struct SlotRun {
  int start = 0;
  int length = 0;

  int end() const { return start + length; }
  auto operator<=>(const SlotRun&) const = default;
};

// Flex-grid spectrum of one link direction. Every fiber pair carries an
// identical grid of `slot_count` slots; allocations never straddle pairs.
class SlotGrid {
 public:
  static constexpr int kDefaultSlotCount = 384;
  static constexpr double kDefaultSlotWidthGhz = 12.5;

  explicit SlotGrid(int slot_count = kDefaultSlotCount,
                    double slot_width_ghz = kDefaultSlotWidthGhz,
                    int fiber_pairs = 1);

  int slot_count() const { return slot_count_; }
  double slot_width_ghz() const { return slot_width_ghz_; }
  int fiber_pairs() const { return static_cast<int>(pairs_.size()); }

  bool occupied(int pair, int slot) const;
  bool is_free(int pair, int start, int length) const;

  // Throws SpectrumError("out of range") or SpectrumError("overlap").
  // Nothing is modified when it throws.
  void allocate(int pair, int start, int length);
  // Throws SpectrumError when any slot of the range is not occupied.
  void release(int pair, int start, int length);

  // Appends an empty fiber pair; existing allocations are untouched.
  void add_fiber_pair();

  // Maximal free runs of one fiber pair, sorted by start.
  std::vector<SlotRun> free_runs(int pair) const;
  // Maximal free runs for every fiber pair (outer index = pair).
  std::vector<std::vector<SlotRun>> contiguous_free_runs() const;

  int occupied_slots() const;
  int total_slots() const { return slot_count_ * fiber_pairs(); }
  double occupancy_ratio() const;

  bool operator==(const SlotGrid&) const = default;

 private:
  void check_range(int pair, int start, int length) const;

  int slot_count_;
  double slot_width_ghz_;
  std::vector<std::vector<std::uint8_t>> pairs_;
};

// Free-function spellings of the grid operations.
std::vector<std::vector<SlotRun>> contiguous_free_runs(const SlotGrid& grid);
SlotGrid allocate(SlotGrid grid, int fiber_pair_index, int start, int length);
double occupancy_ratio(const SlotGrid& grid);

}  // namespace eon

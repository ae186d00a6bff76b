#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "eon/phy.hpp"

namespace eon {

// A channel configuration that may be added for a demand, with the NLI
// coefficient it would have on that demand's route.
struct AdditionOption {
  ChannelConfig config;
  double eta_nli = 0.0;
};

// NLI coefficients and the budget are compared in integer units of this size
// (1/W^2, rounded to nearest), which makes sums exact and order-independent.
// Equal coefficients (same symbol rate, same path) stay equal.
inline constexpr double kEtaQuantum = 1e-6;
std::int64_t eta_units(double eta);

// Minimum-count multiset of options with
//   theta <= sum(datarate) < theta + delta,   0 < sum(eta) <= budget.
// Ties among minimum-count solutions: smallest sum(datarate), then smallest
// sum(slot_count), then smallest sum(eta units), then the lexicographically
// smallest sorted index sequence. A missing budget disables the NLI bound.
//
// Returns sorted option indices (with repetition), or nullopt if infeasible.
// Throws Error when theta <= 0, delta <= 0, or options is empty.
std::optional<std::vector<std::size_t>> solve_additions(double theta_gbps,
                                                        std::span<const AdditionOption> options,
                                                        std::optional<double> nli_budget,
                                                        double delta_gbps);

}  // namespace eon

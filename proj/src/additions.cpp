#include "eon/additions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "eon/error.hpp"

namespace eon {

std::int64_t eta_units(double eta) { return std::llround(eta / kEtaQuantum); }

namespace {

struct Partial {
  int slots = 0;
  std::int64_t eta = 0;
  std::vector<std::uint8_t> counts;
};

// True when a's sorted index sequence precedes b's (both the same size):
// at the first differing option, more copies sort earlier.
bool lex_less(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

// Frontier of non-redundant partials for one datarate sum, kept as a
// staircase: slots strictly increasing, eta strictly decreasing. A partial is
// redundant when another has no more slots and no more eta (ties broken by
// index order); every completion of it is then beaten by the same completion
// of the other, since all ranking terms are additive.
void insert(std::vector<Partial>& frontier, Partial p) {
  auto it = std::upper_bound(frontier.begin(), frontier.end(), p.slots,
                             [](int slots, const Partial& q) { return slots < q.slots; });
  if (it != frontier.begin()) {
    auto prev = std::prev(it);
    if (prev->eta < p.eta) return;
    if (prev->eta == p.eta) {
      if (prev->slots < p.slots || !lex_less(p.counts, prev->counts)) return;
      *prev = std::move(p);
      return;
    }
    if (prev->slots == p.slots) it = frontier.erase(prev);
  }
  auto last = it;
  while (last != frontier.end() && last->eta >= p.eta) ++last;
  it = frontier.erase(it, last);
  frontier.insert(it, std::move(p));
}

}  // namespace

std::optional<std::vector<std::size_t>> solve_additions(double theta_gbps,
                                                        std::span<const AdditionOption> options,
                                                        std::optional<double> nli_budget,
                                                        double delta_gbps) {
  if (!(theta_gbps > 0.0)) throw Error("solve_additions requires positive residual traffic");
  if (!(delta_gbps > 0.0)) throw Error("solve_additions requires positive delta");
  if (options.empty()) throw Error("solve_additions requires at least one option");

  const std::size_t m = options.size();
  std::vector<std::int64_t> eta(m);
  int min_dr = options.front().config.datarate_gbps;
  for (std::size_t i = 0; i < m; ++i) {
    if (options[i].config.datarate_gbps <= 0) throw Error("option with non-positive datarate");
    if (!(options[i].eta_nli > 0.0)) throw Error("option with non-positive NLI coefficient");
    eta[i] = eta_units(options[i].eta_nli);
    min_dr = std::min(min_dr, options[i].config.datarate_gbps);
  }
  const std::int64_t budget =
      nli_budget ? eta_units(*nli_budget) : std::numeric_limits<std::int64_t>::max();
  const double upper = theta_gbps + delta_gbps;

  const int max_count = static_cast<int>(std::ceil(upper / min_dr));
  const int sum_cap = static_cast<int>(std::ceil(upper));

  // min_eta[k][s]: least eta of any k-element multiset with datarate sum s.
  constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::max();
  std::vector<std::vector<std::int64_t>> min_eta(
      static_cast<std::size_t>(max_count) + 1, std::vector<std::int64_t>(sum_cap, kNone));
  min_eta[0][0] = 0;
  int best_count = 0;
  int best_sum = 0;
  for (int k = 1; k <= max_count && best_count == 0; ++k) {
    const auto& prev = min_eta[static_cast<std::size_t>(k) - 1];
    auto& cur = min_eta[static_cast<std::size_t>(k)];
    for (int s = 0; s < sum_cap; ++s) {
      if (prev[s] == kNone) continue;
      for (std::size_t c = 0; c < m; ++c) {
        const int s2 = s + options[c].config.datarate_gbps;
        if (!(s2 < upper)) continue;
        cur[s2] = std::min(cur[s2], prev[s] + eta[c]);
      }
    }
    for (int s = 0; s < sum_cap; ++s) {
      if (s >= theta_gbps && cur[s] != kNone && cur[s] <= budget) {
        best_count = k;
        best_sum = s;
        break;
      }
    }
  }
  if (best_count == 0) return std::nullopt;

  // Best multiset of best_count elements summing to best_sum. Partials that
  // cannot be completed within the budget are dropped.
  const auto completable = [&](int n, int sum, std::int64_t e) {
    const int rest = best_sum - sum;
    if (rest < 0) return false;
    const std::int64_t tail = min_eta[static_cast<std::size_t>(best_count - n)][rest];
    return tail != kNone && tail <= budget - e;
  };
  std::map<int, std::vector<Partial>> layer;
  layer[0].push_back(Partial{0, 0, std::vector<std::uint8_t>(m, 0)});
  for (int n = 1; n <= best_count; ++n) {
    std::map<int, std::vector<Partial>> next;
    for (const auto& [sum, frontier] : layer) {
      for (const Partial& p : frontier) {
        for (std::size_t c = 0; c < m; ++c) {
          const int s2 = sum + options[c].config.datarate_gbps;
          const std::int64_t e2 = p.eta + eta[c];
          if (e2 > budget || p.counts[c] == 255 || !completable(n, s2, e2)) continue;
          Partial q{p.slots + options[c].config.slot_count, e2, p.counts};
          ++q.counts[c];
          insert(next[s2], std::move(q));
        }
      }
    }
    layer = std::move(next);
  }
  const Partial& best = layer.at(best_sum).front();
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < m; ++c) out.insert(out.end(), best.counts[c], c);
  return out;
}

}  // namespace eon

#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eon/topology.hpp"

namespace eon {

enum class Modulation { QPSK = 0, QAM8, QAM16, QAM32, QAM64 };

inline constexpr std::array<Modulation, 5> kModulations{
    Modulation::QPSK, Modulation::QAM8, Modulation::QAM16, Modulation::QAM32, Modulation::QAM64};

int bits_per_symbol(Modulation m);
std::string_view to_string(Modulation m);
Modulation parse_modulation(std::string_view name);

// Physical-layer constants plus the BVT catalog definition.
struct PhyConfig {
  double slot_width_ghz = 12.5;
  int slot_count = 384;
  double roll_off = 0.1;
  double overhead = 0.28;
  // A second FEC/framing overhead; when set the catalog is generated twice.
  std::optional<double> extra_overhead;
  double frequency_thz = 193.4;
  double beta2_ps2_per_km = 21.7;
  double gamma_per_w_km = 1.3;
  double margin_db = 0.0;
  // Required SNR per modulation (QPSK..64QAM) at pre-FEC BER 2.4e-2, from
  // the Gray-coded square/cross QAM BER approximation (tools/required_snr.py).
  std::array<double, 5> required_snr_db{5.9218, 9.3162, 12.3434, 15.2167, 18.0211};
  int min_datarate_gbps = 100;
  int max_datarate_gbps = 600;
  int datarate_step_gbps = 50;

  double required_snr(Modulation m) const {
    return required_snr_db[static_cast<std::size_t>(m)];
  }
};

// JSON document; every field optional, defaults as above.
PhyConfig load_phy_config(std::string_view document);
PhyConfig load_phy_config_file(const std::filesystem::path& path);

// One BVT operating point.
struct ChannelConfig {
  int datarate_gbps = 0;
  Modulation modulation = Modulation::QPSK;
  double overhead = 0.28;
  double symbol_rate_gbd = 0.0;
  double bandwidth_ghz = 0.0;
  int slot_count = 0;
  double required_snr_db = 0.0;

  std::string label() const;
  bool operator==(const ChannelConfig&) const = default;
};

ChannelConfig make_config(int datarate_gbps, Modulation modulation, const PhyConfig& phy,
                          std::optional<double> overhead = std::nullopt);

std::vector<ChannelConfig> generate_configs(const PhyConfig& phy = {});

struct PathMetrics {
  std::vector<Span> span_list;
  double total_length_km = 0.0;
  double eta_nli = 0.0;  // 1/W^2
  double ase_power_w = 0.0;
  double launch_power_w = 0.0;
  double gsnr_db = 0.0;
};

// Closed-form incoherent GN coefficient of one span for a channel of the
// given symbol rate, rounded to a multiple of 2^-30 so that path totals are
// exact sums.
double span_eta_nli(const Span& span, double symbol_rate_gbd, const PhyConfig& phy);
double eta_nli(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy = {});
double ase_power(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy = {});
// GSNR at the per-channel optimum launch power (P_ASE / (2 eta))^(1/3).
double gsnr_db(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy = {});
PathMetrics path_metrics(std::span<const Span> spans, const ChannelConfig& config,
                         const PhyConfig& phy = {});

// Catalog entries whose GSNR clears required SNR + margin on the spans.
std::vector<ChannelConfig> valid_configs(std::span<const Span> spans,
                                         std::span<const ChannelConfig> catalog,
                                         const PhyConfig& phy = {});

}  // namespace eon

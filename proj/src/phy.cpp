#include "eon/phy.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "eon/error.hpp"

namespace eon {

namespace {

constexpr double kPlanck = 6.62607015e-34;  // J s
constexpr int kEtaGridBits = 30;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// dB/km to 1/km (power attenuation).
double power_attenuation(double loss_db_per_km) {
  return loss_db_per_km / (10.0 * std::log10(std::numbers::e));
}

}  // namespace

int bits_per_symbol(Modulation m) { return static_cast<int>(m) + 2; }

std::string_view to_string(Modulation m) {
  switch (m) {
    case Modulation::QPSK: return "QPSK";
    case Modulation::QAM8: return "8QAM";
    case Modulation::QAM16: return "16QAM";
    case Modulation::QAM32: return "32QAM";
    case Modulation::QAM64: return "64QAM";
  }
  return "?";
}

Modulation parse_modulation(std::string_view name) {
  for (Modulation m : kModulations) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError(fmt::format("unknown modulation '{}'", name));
}

PhyConfig load_phy_config(std::string_view document) {
  using nlohmann::json;
  PhyConfig phy;
  try {
    const json doc = json::parse(document);
    phy.slot_width_ghz = doc.value("slot_width_ghz", phy.slot_width_ghz);
    phy.slot_count = doc.value("slot_count", phy.slot_count);
    phy.roll_off = doc.value("roll_off", phy.roll_off);
    phy.overhead = doc.value("overhead", phy.overhead);
    if (doc.contains("extra_overhead") && !doc["extra_overhead"].is_null()) {
      phy.extra_overhead = doc["extra_overhead"].get<double>();
    }
    phy.frequency_thz = doc.value("frequency_thz", phy.frequency_thz);
    phy.beta2_ps2_per_km = doc.value("beta2_ps2_per_km", phy.beta2_ps2_per_km);
    phy.gamma_per_w_km = doc.value("gamma_per_w_km", phy.gamma_per_w_km);
    phy.margin_db = doc.value("margin_db", phy.margin_db);
    phy.min_datarate_gbps = doc.value("min_datarate_gbps", phy.min_datarate_gbps);
    phy.max_datarate_gbps = doc.value("max_datarate_gbps", phy.max_datarate_gbps);
    phy.datarate_step_gbps = doc.value("datarate_step_gbps", phy.datarate_step_gbps);
    if (doc.contains("required_snr_db")) {
      for (const auto& [name, value] : doc["required_snr_db"].items()) {
        phy.required_snr_db[static_cast<std::size_t>(parse_modulation(name))] = value.get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("phy config: ") + e.what());
  }
  if (phy.slot_width_ghz <= 0.0 || phy.slot_count <= 0 || phy.roll_off < 0.0 ||
      phy.overhead < 0.0 || phy.min_datarate_gbps <= 0 || phy.datarate_step_gbps <= 0 ||
      phy.max_datarate_gbps < phy.min_datarate_gbps) {
    throw ConfigError("phy config: non-physical value");
  }
  for (std::size_t i = 1; i < phy.required_snr_db.size(); ++i) {
    if (!(phy.required_snr_db[i] > phy.required_snr_db[i - 1])) {
      throw ConfigError("phy config: required SNR must increase with modulation order");
    }
  }
  return phy;
}

PhyConfig load_phy_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open phy config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return load_phy_config(buf.str());
}

std::string ChannelConfig::label() const {
  return fmt::format("{}G-{}", datarate_gbps, to_string(modulation));
}

ChannelConfig make_config(int datarate_gbps, Modulation modulation, const PhyConfig& phy,
                          std::optional<double> overhead) {
  ChannelConfig c;
  c.datarate_gbps = datarate_gbps;
  c.modulation = modulation;
  c.overhead = overhead.value_or(phy.overhead);
  // Dual polarization: two symbols' worth of bits per baud.
  c.symbol_rate_gbd = datarate_gbps * (1.0 + c.overhead) / (2.0 * bits_per_symbol(modulation));
  c.bandwidth_ghz = c.symbol_rate_gbd * (1.0 + phy.roll_off);
  // Small tolerance so exact multiples (e.g. 37.5 GHz) do not round up.
  c.slot_count = static_cast<int>(std::ceil(c.bandwidth_ghz / phy.slot_width_ghz - 1e-9));
  c.required_snr_db = phy.required_snr(modulation);
  return c;
}

std::vector<ChannelConfig> generate_configs(const PhyConfig& phy) {
  std::vector<double> overheads{phy.overhead};
  if (phy.extra_overhead) overheads.push_back(*phy.extra_overhead);
  std::vector<ChannelConfig> catalog;
  for (double oh : overheads) {
    for (int dr = phy.min_datarate_gbps; dr <= phy.max_datarate_gbps; dr += phy.datarate_step_gbps) {
      for (Modulation m : kModulations) catalog.push_back(make_config(dr, m, phy, oh));
    }
  }
  return catalog;
}

double span_eta_nli(const Span& span, double symbol_rate_gbd, const PhyConfig& phy) {
  if (!(symbol_rate_gbd > 0.0)) throw Error("zero-bandwidth channel");
  const double alpha = power_attenuation(span.loss_db_per_km);  // 1/km
  const double l_eff = (1.0 - std::exp(-alpha * span.length_km)) / alpha;
  const double l_eff_asym = 1.0 / alpha;
  const double beta2 = phy.beta2_ps2_per_km * 1e-24;  // s^2/km
  const double b = symbol_rate_gbd * 1e9;             // Hz
  const double pi = std::numbers::pi;
  const double g = phy.gamma_per_w_km;
  const double eta = (8.0 / 27.0) * g * g * l_eff * l_eff *
                     std::asinh(pi * pi * beta2 * l_eff_asym * b * b / 2.0) /
                     (pi * beta2 * b * b * l_eff_asym);
  // Snapped to a 2^-30 grid: path sums are then exact, so the coefficient is
  // additive over span concatenation regardless of summation order.
  return std::ldexp(std::round(std::ldexp(eta, kEtaGridBits)), -kEtaGridBits);
}

double eta_nli(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy) {
  if (spans.empty()) throw Error("empty span list");
  double eta = 0.0;
  for (const Span& s : spans) eta += span_eta_nli(s, config.symbol_rate_gbd, phy);
  return eta;
}

double ase_power(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy) {
  if (spans.empty()) throw Error("empty span list");
  const double photon_energy = kPlanck * phy.frequency_thz * 1e12;
  const double b = config.symbol_rate_gbd * 1e9;
  double p = 0.0;
  for (const Span& s : spans) {
    const double gain = db_to_linear(s.loss_db());
    p += (gain - 1.0) * db_to_linear(s.noise_figure_db) * photon_energy * b;
  }
  return p;
}

PathMetrics path_metrics(std::span<const Span> spans, const ChannelConfig& config,
                         const PhyConfig& phy) {
  PathMetrics m;
  m.span_list.assign(spans.begin(), spans.end());
  for (const Span& s : spans) m.total_length_km += s.length_km;
  m.eta_nli = eta_nli(spans, config, phy);
  m.ase_power_w = ase_power(spans, config, phy);
  m.launch_power_w = std::cbrt(m.ase_power_w / (2.0 * m.eta_nli));
  const double p = m.launch_power_w;
  m.gsnr_db = 10.0 * std::log10(p / (m.ase_power_w + m.eta_nli * p * p * p));
  return m;
}

double gsnr_db(std::span<const Span> spans, const ChannelConfig& config, const PhyConfig& phy) {
  return path_metrics(spans, config, phy).gsnr_db;
}

std::vector<ChannelConfig> valid_configs(std::span<const Span> spans,
                                         std::span<const ChannelConfig> catalog,
                                         const PhyConfig& phy) {
  std::vector<ChannelConfig> out;
  for (const ChannelConfig& c : catalog) {
    if (gsnr_db(spans, c, phy) >= c.required_snr_db + phy.margin_db) out.push_back(c);
  }
  return out;
}

}  // namespace eon

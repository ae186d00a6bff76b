#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "eon/planner.hpp"

namespace eon {

// Per-run artifacts: throughput.csv, bvts.csv, occupancy.csv,
// lightpaths.csv (ledger snapshot per year) and demands.csv (offered Gbps
// per pair and year). Throws std::ios_base::failure on I/O errors.
void write_run_csvs(const StudyResult& run, const std::filesystem::path& dir);

// fig_throughput.csv: year, offered, scheme1_carried, scheme2_carried,
// topology (seed means; a scheme column is empty when it was not run).
// fig_bvt_vs_throughput.csv: bvt_count, carried_tbps, scheme, topology, seed,
// year.
void emit_figure_data(std::span<const StudyResult> runs, const std::filesystem::path& dir);

// Mean/min/max carried traffic across seeds per topology, scheme and year.
std::string summarize(std::span<const StudyResult> runs);

}  // namespace eon

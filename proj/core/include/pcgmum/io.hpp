#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "pcgmum/analysis.hpp"
#include "pcgmum/config.hpp"
#include "pcgmum/cvsim.hpp"

namespace pcgmum {

inline constexpr const char* kConfigSchema = "pcg-mum-config/1";

// Interchange format: { schema, d, angles, periods, m_matrix (triangular row
// list), offsets }.
nlohmann::json config_to_json(const MumConfig& config);
MumConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerifyReport& report);
nlohmann::json distribution_to_json(const OutcomeDistribution& dist);

// FNV-1a hash of the canonical JSON dump; stable across runs, used as the
// config fingerprint in output metadata.
std::string config_hash(const MumConfig& config);

// Columns: q, re, im, |psi|^2.
void export_state_csv(std::ostream& os, const GridState& state);

// Columns: period_px, entropy_bits, marker_m (empty when off-marker).
void export_sweep_csv(std::ostream& os, const SweepResult& sweep);

nlohmann::json sweep_to_json(const SweepResult& sweep);
nlohmann::json tables_to_json(const Tables& tables);
void export_tables_csv(std::ostream& os, const Tables& tables);

}  // namespace pcgmum

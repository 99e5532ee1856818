#include "pcgmum/io.hpp"

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pcgmum {

nlohmann::json config_to_json(const MumConfig& config) {
    nlohmann::json j;
    j["schema"] = kConfigSchema;
    j["d"] = config.d;
    j["angles"] = config.angles;
    j["periods"] = config.periods;
    j["m_matrix"] = config.m_matrix.m;
    j["offsets"] = config.offsets;
    return j;
}

MumConfig config_from_json(const nlohmann::json& j) {
    if (!j.contains("schema") || j.at("schema").get<std::string>() != kConfigSchema)
        throw std::domain_error("config_from_json: unknown or missing schema");
    MumConfig cfg;
    cfg.d = j.at("d").get<std::int64_t>();
    cfg.angles = j.at("angles").get<std::vector<double>>();
    cfg.periods = j.at("periods").get<std::vector<double>>();
    cfg.m_matrix.d = cfg.d;
    cfg.m_matrix.m = j.at("m_matrix").get<std::vector<std::vector<std::int64_t>>>();
    cfg.offsets = j.at("offsets").get<std::vector<double>>();
    const std::size_t R = cfg.angles.size();
    if (cfg.periods.size() != R || cfg.offsets.size() != R || cfg.m_matrix.m.size() != R)
        throw std::domain_error("config_from_json: inconsistent field lengths");
    for (std::size_t row = 0; row < R; ++row)
        if (cfg.m_matrix.m[row].size() != row)
            throw std::domain_error("config_from_json: m_matrix is not strictly lower triangular");
    return cfg;
}

nlohmann::json report_to_json(const VerifyReport& report) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairCheck& pc : report.pairs)
        pairs.push_back({{"j", pc.j},
                         {"k", pc.k},
                         {"m_real", pc.m_real},
                         {"m_int", pc.m_int},
                         {"residual", pc.residual},
                         {"coprime", pc.coprime},
                         {"matches_matrix", pc.matches_matrix},
                         {"pass", pc.pass}});
    return {{"pass", report.pass}, {"pairs", pairs}};
}

nlohmann::json distribution_to_json(const OutcomeDistribution& dist) {
    nlohmann::json j;
    j["probs"] = dist.probs;
    if (dist.truncation_loss > 0) j["truncation_loss"] = dist.truncation_loss;
    return j;
}

std::string config_hash(const MumConfig& config) {
    const std::string dump = config_to_json(config).dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

void export_state_csv(std::ostream& os, const GridState& state) {
    os << "q,re,im,intensity\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < state.size(); ++i) {
        const auto& a = state.amplitudes[i];
        os << state.q(i) << ',' << a.real() << ',' << a.imag() << ',' << std::norm(a) << '\n';
    }
}

void export_sweep_csv(std::ostream& os, const SweepResult& sweep) {
    os << "period_px,entropy_bits,marker_m\n";
    os << std::setprecision(17);
    for (const auto& [px, entropy] : sweep.samples) {
        os << px << ',' << entropy << ',';
        for (const auto& [m, marker_px] : sweep.markers)
            if (std::abs(marker_px - px) <= 0.5) {
                os << m;
                break;
            }
        os << '\n';
    }
}

nlohmann::json sweep_to_json(const SweepResult& sweep) {
    nlohmann::json samples = nlohmann::json::array();
    for (const auto& [px, entropy] : sweep.samples)
        samples.push_back({{"period_px", px}, {"entropy_bits", entropy}});
    nlohmann::json markers = nlohmann::json::array();
    for (const auto& [m, px] : sweep.markers)
        markers.push_back({{"m", m}, {"period_px", px}});
    return {{"j", sweep.j},
            {"k", sweep.k},
            {"samples", samples},
            {"markers", markers},
            {"gaps", sweep.gaps}};
}

nlohmann::json tables_to_json(const Tables& tables) {
    return {{"entropy_bits", tables.entropy}, {"kl_bits", tables.kl}};
}

void export_tables_csv(std::ostream& os, const Tables& tables) {
    os << "prep_j,measure_k,entropy_bits,kl_bits\n";
    os << std::setprecision(17);
    for (std::size_t j = 0; j < tables.entropy.size(); ++j)
        for (std::size_t k = 0; k < tables.entropy[j].size(); ++k)
            os << j << ',' << k << ',' << tables.entropy[j][k] << ',' << tables.kl[j][k]
               << '\n';
}

}  // namespace pcgmum

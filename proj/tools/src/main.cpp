// pcgmum: construct, verify, and simulate mutually unbiased periodic
// coarse-grained measurements of a continuous variable.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcgmum/analysis.hpp"
#include "pcgmum/config.hpp"
#include "pcgmum/cvsim.hpp"
#include "pcgmum/errors.hpp"
#include "pcgmum/io.hpp"
#include "pcgmum/numtheory.hpp"
#include "pcgmum/version.hpp"

namespace {

using nlohmann::json;

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (!text.empty() && text.back() != '\n') std::cout << '\n';
            return;
        }
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open output file: " + path);
        os << text;
        if (!text.empty() && text.back() != '\n') os << '\n';
    }
};

json make_meta(const std::optional<std::string>& cfg_hash, std::optional<std::size_t> grid) {
    json meta;
    meta["tool"] = "pcgmum";
    meta["version"] = pcgmum::kVersion;
    if (cfg_hash) meta["config_hash"] = *cfg_hash;
    if (grid) meta["grid_size"] = *grid;
    return meta;
}

std::string csv_header(const std::optional<std::string>& cfg_hash,
                       std::optional<std::size_t> grid) {
    std::ostringstream os;
    os << "# tool=pcgmum version=" << pcgmum::kVersion;
    if (cfg_hash) os << " config_hash=" << *cfg_hash;
    if (grid) os << " grid_size=" << *grid;
    os << '\n';
    return os.str();
}

pcgmum::Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return pcgmum::Rational(std::stoll(text));
        return pcgmum::Rational(std::stoll(text.substr(0, slash)),
                                std::stoll(text.substr(slash + 1)));
    } catch (const std::exception&) {
        throw std::domain_error("cannot parse rational: " + text);
    }
}

pcgmum::MumConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::domain_error("cannot open config file: " + path);
    json j;
    is >> j;
    return pcgmum::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mutually unbiased periodic coarse-grained measurement toolkit"};
    app.require_subcommand(1);

    // Shared knobs, bound per subcommand below.
    std::int64_t d = 3;
    std::int64_t bound = 8;
    bool no_prune = false;
    std::string q_text = "1";
    int R = 4;
    std::vector<std::int64_t> mcol{1, 2, 1};
    std::string config_path;
    OutputTarget out;
    double tol = 1e-9;
    int from_j = 0, to_k = 2;
    std::int64_t u = 0;
    std::size_t grid_n = 4096;
    double width = 0.0;
    double beam_radius = 2.54e-3;
    double noise = 0.0;
    double min_px = 20.0, max_px = 200.0, step_px = 1.0;
    bool as_csv = false, as_json = false;
    pcgmum::PhysicalScale scale{632.9e-9, 0.29, 8e-6};

    auto add_scale_flags = [&](CLI::App* cmd) {
        cmd->add_option("--wavelength", scale.wavelength, "Wavelength in meters")
            ->capture_default_str();
        cmd->add_option("--distance", scale.lens_spacing, "Lens spacing z in meters")
            ->capture_default_str();
        cmd->add_option("--pitch", scale.pixel_pitch, "Pixel pitch in meters")
            ->capture_default_str();
    };
    auto add_output_flag = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", out.path, "Output file (default: stdout)");
    };
    auto add_beam_flags = [&](CLI::App* cmd) {
        cmd->add_option("--N", grid_n, "Grid size (power of two)")->capture_default_str();
        cmd->add_option("--width", width,
                        "Gaussian width in dimensionless units (default: from --beam-radius)");
        cmd->add_option("--beam-radius", beam_radius, "Beam radius in meters")
            ->capture_default_str();
    };

    CLI::App* c_rmax = app.add_subcommand("rmax", "Bound on the number of unbiased directions");
    c_rmax->add_option("--d", d, "Dimensionality parameter")->required();
    add_output_flag(c_rmax);

    CLI::App* c_search =
        app.add_subcommand("search", "Brute-force the largest consistent direction family");
    c_search->add_option("--d", d, "Dimensionality parameter")->required();
    c_search->add_option("--bound", bound, "Largest multiplier entry")->capture_default_str();
    c_search->add_flag("--no-prune", no_prune,
                       "Disable congruence-class pruning (cross-validation path)");
    add_output_flag(c_search);

    CLI::App* c_construct = app.add_subcommand("construct", "Symmetric MUM configuration");
    c_construct->add_option("--d", d, "Dimensionality parameter")->required();
    c_construct->add_option("--Q", q_text, "tan(theta)^2 as a rational, e.g. 1 or 4/3")
        ->capture_default_str();
    c_construct->add_option("--R", R, "Number of directions")->required();
    c_construct->add_option("--mcol", mcol, "Anchor multipliers m_10,...  (comma separated)")
        ->delimiter(',')
        ->required();
    add_output_flag(c_construct);

    CLI::App* c_verify = app.add_subcommand("verify", "Check the period-product relations");
    c_verify->add_option("--config", config_path, "Config JSON file")->required();
    c_verify->add_option("--tol", tol, "Relative residual tolerance")->capture_default_str();
    add_output_flag(c_verify);

    CLI::App* c_simulate =
        app.add_subcommand("simulate", "Prepare (j, u), measure direction k");
    c_simulate->add_option("--config", config_path, "Config JSON file")->required();
    c_simulate->add_option("--from", from_j, "Preparation direction j")->required();
    c_simulate->add_option("--u", u, "Prepared outcome index")->capture_default_str();
    c_simulate->add_option("--to", to_k, "Measurement direction k")->required();
    c_simulate->add_option("--noise", noise, "Background noise fraction f: (1-f) p + f/d")
        ->capture_default_str();
    c_simulate->add_flag("--csv", as_csv, "Emit CSV instead of JSON");
    add_beam_flags(c_simulate);
    add_scale_flags(c_simulate);
    add_output_flag(c_simulate);

    CLI::App* c_sweep = app.add_subcommand("sweep", "Entropy vs measured-direction period");
    c_sweep->add_option("--config", config_path, "Config JSON file")->required();
    c_sweep->add_option("--prep", from_j, "Preparation direction j")->capture_default_str();
    c_sweep->add_option("--u", u, "Prepared outcome index")->capture_default_str();
    c_sweep->add_option("--to", to_k, "Swept measurement direction k")->capture_default_str();
    c_sweep->add_option("--min", min_px, "Smallest period in pixels")->capture_default_str();
    c_sweep->add_option("--max", max_px, "Largest period in pixels")->capture_default_str();
    c_sweep->add_option("--step", step_px, "Period step in pixels")->capture_default_str();
    c_sweep->add_flag("--json", as_json, "Emit JSON instead of CSV");
    add_beam_flags(c_sweep);
    add_scale_flags(c_sweep);
    add_output_flag(c_sweep);

    CLI::App* c_tables =
        app.add_subcommand("tables", "Entropy and KL tables over all direction pairs");
    c_tables->add_option("--config", config_path, "Config JSON file")->required();
    c_tables->add_option("--noise", noise,
                         "Background noise fraction f: (1-f) p + f/d "
                         "(f = 0.03 leaks 2% total mass for d = 3)")
        ->capture_default_str();
    c_tables->add_option("--u", u, "Prepared outcome index")->capture_default_str();
    c_tables->add_flag("--csv", as_csv, "Emit CSV instead of JSON");
    add_beam_flags(c_tables);
    add_scale_flags(c_tables);
    add_output_flag(c_tables);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n';
        return 2;  // usage error
    }

    try {
        if (c_rmax->parsed()) {
            out.write(std::to_string(pcgmum::r_max(d)));
        } else if (c_search->parsed()) {
            pcgmum::SearchOptions opt;
            opt.use_congruence_pruning = !no_prune;
            out.write(std::to_string(pcgmum::search_max_family(d, bound, opt)));
        } else if (c_construct->parsed()) {
            const pcgmum::MumConfig cfg =
                pcgmum::build_symmetric(d, parse_rational(q_text), R, mcol);
            json j = pcgmum::config_to_json(cfg);
            j["meta"] = make_meta(pcgmum::config_hash(cfg), std::nullopt);
            out.write(j.dump(2));
        } else if (c_verify->parsed()) {
            const pcgmum::MumConfig cfg = load_config(config_path);
            const pcgmum::VerifyReport report = pcgmum::verify_config(cfg, tol);
            json j = pcgmum::report_to_json(report);
            j["meta"] = make_meta(pcgmum::config_hash(cfg), std::nullopt);
            out.write(j.dump(2));
            return report.pass ? 0 : 1;
        } else if (c_simulate->parsed()) {
            const pcgmum::MumConfig cfg = load_config(config_path);
            const double w = width > 0
                                 ? width
                                 : pcgmum::beam_width_dimensionless(beam_radius, scale);
            const pcgmum::GridState input = pcgmum::gaussian_state(grid_n, w, 0.0);
            const pcgmum::GridState prepared = pcgmum::prepare(input, cfg, from_j, u);
            pcgmum::OutcomeDistribution dist =
                pcgmum::measure_probs(prepared, cfg, from_j, to_k);
            dist = pcgmum::apply_background(dist, noise);
            if (as_csv) {
                std::ostringstream os;
                os << csv_header(pcgmum::config_hash(cfg), grid_n);
                os << "outcome,probability\n";
                for (std::size_t v = 0; v < dist.probs.size(); ++v)
                    os << v << ',' << dist.probs[v] << '\n';
                out.write(os.str());
            } else {
                json j = pcgmum::distribution_to_json(dist);
                j["entropy_bits"] = pcgmum::shannon_entropy(dist);
                j["kl_bits"] = pcgmum::kl_uniform(dist);
                j["meta"] = make_meta(pcgmum::config_hash(cfg), grid_n);
                out.write(j.dump(2));
            }
        } else if (c_sweep->parsed()) {
            const pcgmum::MumConfig cfg = load_config(config_path);
            pcgmum::SweepParams params;
            params.prep_j = from_j;
            params.prep_u = u;
            params.measure_k = to_k;
            params.min_period_px = min_px;
            params.max_period_px = max_px;
            params.step_px = step_px;
            params.grid_size = grid_n;
            params.beam_width = width;
            params.beam_radius_m = beam_radius;
            const pcgmum::SweepResult sweep = pcgmum::entropy_sweep(cfg, params, scale);
            if (as_json) {
                json j = pcgmum::sweep_to_json(sweep);
                j["meta"] = make_meta(pcgmum::config_hash(cfg), grid_n);
                out.write(j.dump(2));
            } else {
                std::ostringstream os;
                os << csv_header(pcgmum::config_hash(cfg), grid_n);
                pcgmum::export_sweep_csv(os, sweep);
                out.write(os.str());
            }
        } else if (c_tables->parsed()) {
            const pcgmum::MumConfig cfg = load_config(config_path);
            pcgmum::TableParams params;
            params.noise_fraction = noise;
            params.grid_size = grid_n;
            params.beam_width = width;
            params.beam_radius_m = beam_radius;
            params.prep_u = u;
            const pcgmum::Tables tables = pcgmum::reproduce_tables(cfg, params, scale);
            if (as_csv) {
                std::ostringstream os;
                os << csv_header(pcgmum::config_hash(cfg), grid_n);
                pcgmum::export_tables_csv(os, tables);
                out.write(os.str());
            } else {
                json j = pcgmum::tables_to_json(tables);
                j["meta"] = make_meta(pcgmum::config_hash(cfg), grid_n);
                out.write(j.dump(2));
            }
        }
    } catch (const std::exception& e) {
        json err;
        err["error"] = e.what();
        std::cerr << err.dump() << '\n';
        return 1;
    }
    return 0;
}

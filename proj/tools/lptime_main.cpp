// lptime: rank-based nonlinear time series toolkit.
//
// Every subcommand loads one CSV column, applies the mid-rank score
// transform and emits JSON (10 significant digits) or CSV (8). `run`
// executes the whole analysis into a bundle directory with a manifest.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pipeline.hpp"

namespace cli = lptime::cli;
using cli::PipelineConfig;
using nlohmann::json;

namespace {

// Accepts the stock key=value format or a flat JSON object.
class JsonOrIniConfig : public CLI::ConfigBase {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::stringstream buffer;
        buffer << input.rdbuf();
        std::string text = buffer.str();
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '{') {
            const json j = json::parse(text);
            std::vector<CLI::ConfigItem> items;
            for (const auto& [key, value] : j.items()) {
                CLI::ConfigItem item;
                item.name = key;
                if (value.is_array()) {
                    for (const auto& v : value) {
                        item.inputs.push_back(v.is_string() ? v.get<std::string>()
                                                            : v.dump());
                    }
                } else {
                    item.inputs.push_back(value.is_string() ? value.get<std::string>()
                                                            : value.dump());
                }
                items.push_back(item);
            }
            return items;
        }
        std::stringstream replay(text);
        return CLI::ConfigBase::from_config(replay);
    }
};

void emit(const PipelineConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw cli::DataError("cannot write output file: " + cfg.out);
    out << text;
}

void emit_json(const PipelineConfig& cfg, const json& j) {
    emit(cfg, j.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"LP score-transform time series analysis"};
    app.set_version_flag("--version", std::string("lptime ") + cli::kVersion);
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config")
        ->description("Config file (key=value or flat JSON object)")
        ->configurable(false);
    app.config_formatter(std::make_shared<JsonOrIniConfig>());

    PipelineConfig cfg;

    app.add_option("-i,--input", cfg.input, "Input CSV with a header row");
    app.add_option("-c,--column", cfg.column, "Column name (default: first column)");
    app.add_flag("--returns", cfg.as_returns,
                 "Treat the column as prices and analyze log returns");
    app.add_option("--k", cfg.k, "Number of score components")->check(CLI::Range(1, 50));
    app.add_option("--k-moments", cfg.k_moments, "Moments for the tail diagnostic")
        ->check(CLI::Range(1, 200));
    auto* seed_opt = app.add_option("--seed", cfg.seed, "RNG seed (generated if absent)");
    app.add_option("-o,--out", cfg.out, "Output file (or directory for run)");
    app.add_option("--format", cfg.format, "json or csv where both apply")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* c_transform = app.add_subcommand("transform", "Emit Z and YS1..YSk as CSV");
    auto* c_qiq = app.add_subcommand("qiq", "Informative quantile function");
    c_qiq->add_option("--points", cfg.points, "Grid size")->check(CLI::Range(3, 100000));
    auto* c_moments = app.add_subcommand("moments", "LP moments and tail index");
    c_moments->add_option("--threshold", cfg.tail_threshold, "Tail-index threshold")
        ->check(CLI::Range(0.0, 1.0));
    auto* c_comoment = app.add_subcommand("comoment", "Lag-h comoment matrix with BIC smoothing");
    c_comoment->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    auto* c_correlogram = app.add_subcommand("correlogram", "Component autocorrelations");
    c_correlogram->add_option("--max-lag", cfg.max_lag)->check(CLI::PositiveNumber);
    auto* c_copula = app.add_subcommand("copula", "Serial copula density grid (CSV)");
    c_copula->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_copula->add_option("--grid", cfg.grid)->check(CLI::Range(2, 4096));
    auto* c_auto = app.add_subcommand("autolpinfor", "Nonlinear dependence vs lag");
    c_auto->add_option("--max-lag", cfg.max_lag)->check(CLI::PositiveNumber);
    c_auto->add_flag("--granger", cfg.granger, "Also integrate the Granger-Lin divergence");
    auto* c_nonstat = app.add_subcommand("nonstat", "Time-index comoment diagnostics");
    auto* c_quantcorr = app.add_subcommand("quantcorr", "Quantile correlation curve");
    c_quantcorr->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_quantcorr->add_option("--points", cfg.points)->check(CLI::Range(3, 100000));
    auto* c_condinfor = app.add_subcommand("condinfor", "Conditional LPinfor curve");
    c_condinfor->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_condinfor->add_option("--points", cfg.points)->check(CLI::Range(3, 100000));
    auto* c_condquant = app.add_subcommand("condquant", "Conditional quantile curves (CSV)");
    std::string condquant_qiq_out;
    c_condquant->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_condquant->add_option("--u-grid", cfg.u_grid)->check(CLI::Range(1, 9999));
    c_condquant->add_option("--levels", cfg.levels, "Quantile levels")
        ->delimiter(',');
    c_condquant->add_option("--nsim", cfg.n_sim)->check(CLI::PositiveNumber);
    c_condquant->add_option("--qiq-out", condquant_qiq_out,
                            "Also write per-u conditional QIQ grids (CSV file)");
    c_condquant->add_option("--qiq-points", cfg.points)->check(CLI::Range(3, 100000));
    auto* c_blomqvist = app.add_subcommand("blomqvist", "Medial correlation");
    c_blomqvist->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_blomqvist->add_option("--components", cfg.components,
                            "Also estimate per transformed component")
        ->delimiter(',');
    auto* c_spectrum = app.add_subcommand("spectrum", "AR spectra of Z and YS components");
    c_spectrum->add_option("--max-order", cfg.max_order)->check(CLI::Range(0, 200));
    c_spectrum->add_option("--points,--grid", cfg.spec_points)->check(CLI::Range(8, 65536));
    auto* c_copspec = app.add_subcommand("copspec", "Copula spectral density at (u,v)");
    c_copspec->add_option("--u", cfg.copspec_u)->check(CLI::Range(0.0, 1.0));
    c_copspec->add_option("--v", cfg.copspec_v)->check(CLI::Range(0.0, 1.0));
    c_copspec->add_option("--H", cfg.copspec_h)->check(CLI::Range(1, 10000));
    c_copspec->add_option("--points,--grid", cfg.spec_points)->check(CLI::Range(8, 65536));
    auto* c_var = app.add_subcommand("var", "Multiple AR model over score components");
    c_var->add_option("--components", cfg.components, "YS indices (default: non-flat)")
        ->delimiter(',');
    c_var->add_option("--max-order", cfg.max_order)->check(CLI::Range(0, 200));
    auto* c_forecast = app.add_subcommand("forecast", "Fit the VAR and forecast");
    c_forecast->add_option("--components", cfg.components)->delimiter(',');
    c_forecast->add_option("--max-order", cfg.max_order)->check(CLI::Range(0, 200));
    c_forecast->add_option("--steps", cfg.steps)->check(CLI::PositiveNumber);
    auto* c_run = app.add_subcommand("run", "Full pipeline into a bundle directory");
    c_run->add_option("--lag", cfg.lag)->check(CLI::PositiveNumber);
    c_run->add_option("--max-lag", cfg.max_lag)->check(CLI::PositiveNumber);
    c_run->add_option("--max-order", cfg.max_order)->check(CLI::Range(0, 200));
    c_run->add_option("--grid", cfg.grid)->check(CLI::Range(2, 4096));
    c_run->add_option("--points", cfg.points)->check(CLI::Range(3, 100000));
    c_run->add_option("--u-grid", cfg.u_grid)->check(CLI::Range(1, 9999));
    c_run->add_option("--levels", cfg.levels)->delimiter(',');
    c_run->add_option("--nsim", cfg.n_sim)->check(CLI::PositiveNumber);
    c_run->add_option("--components", cfg.components)->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.seed_set = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(c_run)) {
            return cli::run_pipeline(cfg);
        }
        const lptime::SeriesSample sample = cli::load_sample(cfg);

        if (app.got_subcommand(c_transform)) {
            std::ostringstream os;
            cli::write_transform_csv(os, lptime::lp_transform(sample, cfg.k));
            emit(cfg, os.str());
        } else if (app.got_subcommand(c_qiq)) {
            emit_json(cfg, cli::qiq_report(sample, cfg.points));
        } else if (app.got_subcommand(c_moments)) {
            emit_json(cfg, cli::moments_report(sample, cfg.k_moments, cfg.tail_threshold));
        } else if (app.got_subcommand(c_comoment)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            emit_json(cfg, cli::comoment_report(
                               series, lptime::bic_smooth(lptime::lp_comoment_matrix(
                                           series, cfg.lag))));
        } else if (app.got_subcommand(c_correlogram)) {
            emit_json(cfg, cli::correlogram_report(lptime::lp_transform(sample, cfg.k),
                                                   cfg.max_lag));
        } else if (app.got_subcommand(c_auto)) {
            emit_json(cfg, cli::autolpinfor_report(lptime::lp_transform(sample, cfg.k),
                                                   cfg.max_lag, cfg.granger));
        } else if (app.got_subcommand(c_copula)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            const auto model = lptime::CopulaModel::serial(
                series, lptime::bic_smooth(lptime::lp_comoment_matrix(series, cfg.lag)));
            std::ostringstream os;
            cli::write_copula_csv(os, model, cfg.grid);
            emit(cfg, os.str());
        } else if (app.got_subcommand(c_nonstat)) {
            emit_json(cfg, cli::nonstat_report(sample, cfg.k));
        } else if (app.got_subcommand(c_quantcorr)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            const auto model = lptime::CopulaModel::serial(
                series, lptime::bic_smooth(lptime::lp_comoment_matrix(series, cfg.lag)));
            emit_json(cfg, cli::quantcorr_report(sample, model, cfg.lag, cfg.points));
        } else if (app.got_subcommand(c_condinfor)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            const auto model = lptime::CopulaModel::serial(
                series, lptime::bic_smooth(lptime::lp_comoment_matrix(series, cfg.lag)));
            emit_json(cfg, cli::condinfor_report(model, cfg.points));
        } else if (app.got_subcommand(c_condquant)) {
            cfg.materialize_seed();
            const auto series = lptime::lp_transform(sample, cfg.k);
            const auto model = lptime::CopulaModel::serial(
                series, lptime::bic_smooth(lptime::lp_comoment_matrix(series, cfg.lag)));
            std::ostringstream os;
            std::ostringstream qiq_os;
            json meta;
            cli::write_condquant_csv(os, model, cfg.u_grid, cfg.levels, cfg.n_sim,
                                     cfg.seed, &meta,
                                     condquant_qiq_out.empty() ? nullptr : &qiq_os,
                                     cfg.points);
            emit(cfg, os.str());
            if (!condquant_qiq_out.empty()) {
                std::ofstream qf(condquant_qiq_out, std::ios::binary);
                if (!qf) throw cli::DataError("cannot write " + condquant_qiq_out);
                qf << qiq_os.str();
            }
            std::fputs((meta.dump(2) + "\n").c_str(), stderr);
        } else if (app.got_subcommand(c_blomqvist)) {
            emit_json(cfg, cli::blomqvist_report(sample, cfg.lag, cfg.k, cfg.components));
        } else if (app.got_subcommand(c_spectrum)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            const auto spectra = lptime::lp_spectrum(
                series, cfg.max_order, lptime::default_omega_grid(cfg.spec_points));
            if (cfg.format == "csv") {
                std::ostringstream os;
                cli::write_spectrum_csv(os, spectra);
                emit(cfg, os.str());
            } else {
                emit_json(cfg, cli::spectrum_report(spectra));
            }
        } else if (app.got_subcommand(c_copspec)) {
            emit_json(cfg, cli::copspec_report(lptime::lp_transform(sample, cfg.k),
                                               cfg.copspec_h, cfg.copspec_u,
                                               cfg.copspec_v, cfg.spec_points));
        } else if (app.got_subcommand(c_var) || app.got_subcommand(c_forecast)) {
            const auto series = lptime::lp_transform(sample, cfg.k);
            std::vector<int> comps = cfg.components;
            if (comps.empty()) {
                const auto spectra = lptime::lp_spectrum(
                    series, cfg.max_order, lptime::default_omega_grid(16));
                for (int j = 1; j <= series.k(); ++j) {
                    if (!spectra[j].flat) comps.push_back(j);
                }
                if (comps.empty()) {
                    for (int j = 1; j <= series.k(); ++j) comps.push_back(j);
                }
            }
            const auto model = lptime::fit_var(series, comps, cfg.max_order);
            if (app.got_subcommand(c_forecast)) {
                emit_json(cfg, cli::forecast_report(model, series, cfg.steps));
            } else {
                emit_json(cfg, cli::var_report(
                                   model, lptime::residual_diagnostics(model, series)));
            }
        }
    } catch (const cli::DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const lptime::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}

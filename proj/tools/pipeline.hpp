#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lptime/comoment.hpp"
#include "lptime/conditional.hpp"
#include "lptime/copula.hpp"
#include "lptime/empirical.hpp"
#include "lptime/moments.hpp"
#include "lptime/spectrum.hpp"
#include "lptime/var_model.hpp"

namespace lptime::cli {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

// Input or file-format problem; maps to exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PipelineConfig {
    std::string input;
    std::string column;      // empty = first column
    bool as_returns = false;
    int k = 4;
    int k_moments = 20;
    double tail_threshold = 0.95;
    int lag = 1;
    int max_lag = 20;
    int grid = 101;          // copula density grid
    int points = 99;         // curve grids (qiq, quantcorr, condinfor)
    std::vector<double> levels = {0.001, 0.25, 0.5, 0.75, 0.999};
    int u_grid = 21;         // conditional-quantile sweep size
    std::uint64_t n_sim = 10000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int max_order = 12;
    int spec_points = 512;
    int copspec_h = 50;
    double copspec_u = 0.1;
    double copspec_v = 0.1;
    std::vector<int> components; // VAR components; empty = drop flat spectra
    bool granger = false;
    std::string format = "json";
    std::string out;
    int steps = 1;

    // Materializes the seed when the user gave none; always reported.
    std::uint64_t materialize_seed();
};

// Round to 10 significant digits for JSON output.
double sig10(double v);
json jnum(double v);
json jvec(const std::vector<double>& v);
json jmat(const std::vector<double>& row_major, int rows, int cols);

// 8 significant digits for CSV cells.
std::string csv_num(double v);

struct LoadedSeries {
    std::vector<double> values;
    std::string column;
    std::size_t raw_rows = 0;
};

/// CSV ingestion. With as_returns the column is treated as prices and mapped
/// to log returns. Parse failures name the offending 1-based data row.
LoadedSeries load_series(const std::string& path, const std::string& column,
                         bool as_returns);

/// Loader plus the CLI-level floor of 10 usable observations.
SeriesSample load_sample(const PipelineConfig& cfg);

// Stage builders shared by the subcommands and the full pipeline.
void write_transform_csv(std::ostream& os, const LpSeries& series);
json qiq_report(const SeriesSample& sample, int points);
json moments_report(const SeriesSample& sample, int k_moments, double threshold);
json comoment_report(const ComomentMatrix& smoothed);

/// Comoment report plus the reconstructed Pearson autocorrelation
/// sum LP(j) C(j,m) LP(m) in raw and smooth form.
json comoment_report(const LpSeries& series, const ComomentMatrix& smoothed);
json correlogram_report(const LpSeries& series, int max_lag);
json autolpinfor_report(const LpSeries& series, int max_lag, bool granger);
void write_copula_csv(std::ostream& os, const CopulaModel& model, int grid);
json nonstat_report(const SeriesSample& sample, int k);
json quantcorr_report(const SeriesSample& sample, const CopulaModel& model, int lag,
                      int points);
json condinfor_report(const CopulaModel& model, int points);
void write_condquant_csv(std::ostream& os, const CopulaModel& model, int u_grid,
                         const std::vector<double>& levels, std::uint64_t n_sim,
                         std::uint64_t seed, json* meta,
                         std::ostream* qiq_os = nullptr, int qiq_points = 19);
json blomqvist_report(const SeriesSample& sample, int lag, int k,
                      const std::vector<int>& components);
json spectrum_report(const std::vector<ComponentSpectrum>& spectra);
void write_spectrum_csv(std::ostream& os, const std::vector<ComponentSpectrum>& spectra);
json copspec_report(const LpSeries& series, int h_max, double u, double v, int points);
json var_report(const VarModel& model, const ResidualReport& resid);
json forecast_report(const VarModel& model, const LpSeries& series, int steps);

/// Runs every stage into cfg.out (a directory), writes manifest.json, and
/// returns the process exit code (0 all ok, 3 data error, 4 any stage
/// failure).
int run_pipeline(PipelineConfig cfg);

} // namespace lptime::cli

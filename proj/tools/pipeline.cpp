#include "pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "lptime/rng.hpp"

namespace lptime::cli {

namespace fs = std::filesystem;

std::uint64_t PipelineConfig::materialize_seed() {
    if (!seed_set) {
        std::random_device rd;
        seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        seed_set = true;
    }
    return seed;
}

double sig10(double v) {
    if (!std::isfinite(v)) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9e", v);
    return std::strtod(buf, nullptr);
}

json jnum(double v) { return sig10(v); }

json jvec(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(sig10(x));
    return a;
}

json jmat(const std::vector<double>& row_major, int rows, int cols) {
    json m = json::array();
    for (int r = 0; r < rows; ++r) {
        json row = json::array();
        for (int c = 0; c < cols; ++c) {
            row.push_back(sig10(row_major[static_cast<std::size_t>(r) * cols + c]));
        }
        m.push_back(row);
    }
    return m;
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.8g", v);
    return buf;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

json mask_json(const ComomentMatrix& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols; ++c) {
            row.push_back(m.mask[static_cast<std::size_t>(r) * m.cols + c] != 0);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

LoadedSeries load_series(const std::string& path, const std::string& column,
                         bool as_returns) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw DataError("input file is empty: " + path);
    const auto names = split_csv_line(header);

    std::size_t col = 0;
    if (column.empty()) {
        col = 0;
    } else {
        bool found = false;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (trim(names[i]) == column) {
                col = i;
                found = true;
                break;
            }
        }
        if (!found) throw DataError("column not found: " + column);
    }

    LoadedSeries out;
    out.column = column.empty() ? trim(names[0]) : column;

    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (col >= cells.size()) {
            throw DataError("row " + std::to_string(row) + " has no column '" +
                            out.column + "'");
        }
        const std::string cell = trim(cells[col]);
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v)) {
            throw DataError("non-numeric cell in column '" + out.column + "' at row " +
                            std::to_string(row));
        }
        out.values.push_back(v);
    }
    out.raw_rows = out.values.size();

    if (as_returns) {
        if (out.values.size() < 2) throw DataError("need at least 2 prices for returns");
        std::vector<double> r(out.values.size() - 1);
        for (std::size_t i = 1; i < out.values.size(); ++i) {
            if (!(out.values[i - 1] > 0.0) || !(out.values[i] > 0.0)) {
                throw DataError("non-positive price at row " + std::to_string(i + 1));
            }
            r[i - 1] = std::log(out.values[i] / out.values[i - 1]);
        }
        out.values = std::move(r);
    }
    if (out.values.size() < 2) throw DataError("fewer than 2 usable observations");
    return out;
}

SeriesSample load_sample(const PipelineConfig& cfg) {
    LoadedSeries s = load_series(cfg.input, cfg.column, cfg.as_returns);
    if (s.values.size() < 10) {
        throw DataError("fewer than 10 usable observations (" +
                        std::to_string(s.values.size()) + ")");
    }
    return SeriesSample(std::move(s.values));
}

void write_transform_csv(std::ostream& os, const LpSeries& series) {
    os << "t,Z";
    for (int j = 1; j <= series.k(); ++j) os << ",YS" << j;
    os << "\n";
    for (std::size_t t = 0; t < series.length; ++t) {
        os << (t + 1) << ',' << csv_num(series.z[t]);
        for (int j = 0; j < series.k(); ++j) os << ',' << csv_num(series.ys[j][t]);
        os << "\n";
    }
}

json qiq_report(const SeriesSample& sample, int points) {
    const auto grid = probability_grid(static_cast<std::size_t>(points));
    const QiqCurve c = qiq_curve(sample, grid);
    json j;
    j["grid"] = jvec(c.grid);
    j["qiq"] = jvec(c.values);
    j["mid_quartile"] = jnum(c.mid_quartile);
    j["quartile_deviation"] = jnum(c.quartile_deviation);
    return j;
}

json moments_report(const SeriesSample& sample, int k_moments, double threshold) {
    const LpMomentVector m = lp_moments(sample, k_moments);
    const TailIndex t = lp_tail_index(m, threshold);
    const ReferenceDistribution& ref = nearest_reference(m);
    json j;
    j["lp"] = jvec(m.values);
    j["cumsum"] = jvec(m.cumsq);
    j["k_used"] = m.k_used;
    j["capped"] = m.capped;
    j["tail_index"] = t.index;
    j["saturated"] = t.saturated;
    j["threshold"] = jnum(threshold);
    j["nearest_reference"] = ref.name;
    j["normal_first_moment"] = jnum(lp_moment_normal_first());
    j["conventions"] = {{"variance_divisor", "T"},
                        {"quantile", "left-continuous step inverse"}};
    return j;
}

json comoment_report(const ComomentMatrix& m) {
    json j;
    j["kind"] = m.kind == ComomentMatrix::Kind::serial ? "serial" : "time_index";
    j["lag"] = m.lag;
    j["n"] = m.n;
    j["raw"] = jmat(m.raw, m.rows, m.cols);
    j["smooth"] = jmat(m.smooth, m.rows, m.cols);
    j["mask"] = mask_json(m);
    j["bic_path"] = jvec(m.bic_path);
    j["selected"] = m.selected;
    return j;
}

json comoment_report(const LpSeries& series, const ComomentMatrix& m) {
    json j = comoment_report(m);
    const LpMomentVector mom = lp_moments(series);
    j["r_lp_raw"] = jnum(lp_autocorrelation(mom, mom, m, false));
    j["r_lp_smooth"] = jnum(lp_autocorrelation(mom, mom, m, true));
    return j;
}

json correlogram_report(const LpSeries& series, int max_lag) {
    const Correlogram c = lp_correlogram(series, max_lag);
    json j;
    j["max_lag"] = c.max_lag;
    j["band"] = jnum(c.band);
    json cols;
    for (int jj = 1; jj <= series.k(); ++jj) {
        cols["YS" + std::to_string(jj)] = jvec(c.acf[jj - 1]);
    }
    j["acf"] = cols;
    return j;
}

json autolpinfor_report(const LpSeries& series, int max_lag, bool granger) {
    json lags = json::array();
    json values = json::array();
    json gl = json::array();
    for (int h = 1; h <= max_lag; ++h) {
        const CopulaModel model =
            CopulaModel::serial(series, bic_smooth(lp_comoment_matrix(series, h)));
        lags.push_back(h);
        values.push_back(jnum(auto_lpinfor(model)));
        if (granger) gl.push_back(jnum(granger_lin(model)));
    }
    json j;
    j["lags"] = lags;
    j["autolpinfor"] = values;
    if (granger) j["granger_lin"] = gl;
    return j;
}

void write_copula_csv(std::ostream& os, const CopulaModel& model, int grid) {
    // Row i = u_i, column l = v_l, u_i = (i - 1/2)/grid.
    for (int i = 1; i <= grid; ++i) {
        const double u = (i - 0.5) / grid;
        for (int l = 1; l <= grid; ++l) {
            const double v = (l - 0.5) / grid;
            os << (l > 1 ? "," : "") << csv_num(copula_density(model, u, v));
        }
        os << "\n";
    }
}

json nonstat_report(const SeriesSample& sample, int k) {
    ComomentMatrix m = bic_smooth(nonstationarity_comoment(sample, k));
    json j = comoment_report(m);
    j["lpinfor_raw"] = jnum(lpinfor_stat(m, false));
    j["lpinfor_smooth"] = jnum(lpinfor_stat(m, true));
    return j;
}

json quantcorr_report(const SeriesSample& sample, const CopulaModel& model, int lag,
                      int points) {
    // Pearson lag autocorrelation of the raw series drives the Gaussian
    // reference curve.
    const auto& y = sample.values();
    const std::size_t t_len = y.size();
    double mean = 0.0;
    for (double x : y) mean += x;
    mean /= static_cast<double>(t_len);
    double denom = 0.0;
    for (double x : y) denom += (x - mean) * (x - mean);
    double num = 0.0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(lag) < t_len; ++t) {
        num += (y[t] - mean) * (y[t + lag] - mean);
    }
    const double rho = denom > 0.0 ? num / denom : 0.0;

    const auto grid = probability_grid(static_cast<std::size_t>(points));
    json ju = json::array(), lam = json::array(), gauss = json::array(),
         indep = json::array();
    for (double u : grid) {
        ju.push_back(jnum(u));
        lam.push_back(jnum(quantile_correlation(model, u)));
        gauss.push_back(jnum(gaussian_copula_curve(rho, u)));
        indep.push_back(jnum(std::min(u, 1.0 - u)));
    }
    json j;
    j["lag"] = lag;
    j["rho"] = jnum(rho);
    j["u"] = ju;
    j["lambda"] = lam;
    j["gaussian"] = gauss;
    j["independence"] = indep;
    return j;
}

json condinfor_report(const CopulaModel& model, int points) {
    const auto grid = probability_grid(static_cast<std::size_t>(points));
    json ju = json::array(), infor = json::array();
    json betas = json::array();
    for (int m = 1; m <= model.matrix.cols; ++m) betas.push_back(json::array());
    for (double u : grid) {
        ju.push_back(jnum(u));
        infor.push_back(jnum(conditional_lpinfor(model, u)));
        for (int m = 1; m <= model.matrix.cols; ++m) {
            betas[m - 1].push_back(jnum(conditional_beta(model, u, m)));
        }
    }
    json j;
    j["u"] = ju;
    j["lpinfor"] = infor;
    for (int m = 1; m <= model.matrix.cols; ++m) {
        j["beta" + std::to_string(m)] = betas[m - 1];
    }
    return j;
}

void write_condquant_csv(std::ostream& os, const CopulaModel& model, int u_grid,
                         const std::vector<double>& levels, std::uint64_t n_sim,
                         std::uint64_t seed, json* meta,
                         std::ostream* qiq_os, int qiq_points) {
    os << "u";
    for (double v : levels) os << ",q" << csv_num(v);
    os << "\n";
    if (qiq_os) *qiq_os << "u,p,qiq\n";
    const auto qiq_grid = probability_grid(static_cast<std::size_t>(qiq_points));
    json rates = json::array();
    bool warned = false;
    Rng root(seed);
    for (int i = 1; i <= u_grid; ++i) {
        const double u = static_cast<double>(i) / (u_grid + 1);
        const ConditionalSample cond =
            sample_conditional(model, u, n_sim, root.split(static_cast<std::uint64_t>(i)).seed());
        const ConditionalQuantiles q = conditional_quantiles(cond, levels);
        warned = warned || q.extreme_warning;
        rates.push_back(jnum(cond.acceptance_rate));
        os << csv_num(u);
        for (double val : q.values) os << ',' << csv_num(val);
        os << "\n";
        if (qiq_os) {
            const QiqCurve qc = conditional_qiq(cond, qiq_grid);
            for (std::size_t g = 0; g < qc.grid.size(); ++g) {
                *qiq_os << csv_num(u) << ',' << csv_num(qc.grid[g]) << ','
                        << csv_num(qc.values[g]) << "\n";
            }
        }
    }
    if (meta) {
        (*meta)["seed"] = seed;
        (*meta)["n_sim"] = n_sim;
        (*meta)["acceptance_rates"] = rates;
        (*meta)["extreme_level_warning"] = warned;
    }
}

json blomqvist_report(const SeriesSample& sample, int lag, int k,
                      const std::vector<int>& components) {
    const LpSeries series = lp_transform(sample, k);
    const CopulaModel base =
        CopulaModel::serial(series, bic_smooth(lp_comoment_matrix(series, lag)));
    json j;
    j["lag"] = lag;
    j["beta"] = jnum(blomqvist_beta(base));
    json per;
    for (int comp : components) {
        if (comp < 1 || comp > series.k()) {
            throw InvalidArgument("blomqvist component out of range");
        }
        // The transformed component becomes the series; its own rank copula
        // drives the estimate.
        const SeriesSample derived(series.ys[comp - 1]);
        const LpSeries ds = lp_transform(derived, k);
        const CopulaModel dm =
            CopulaModel::serial(ds, bic_smooth(lp_comoment_matrix(ds, lag)));
        per["YS" + std::to_string(comp)] = jnum(blomqvist_beta(dm));
    }
    if (!per.empty()) j["per_component"] = per;
    return j;
}

json spectrum_report(const std::vector<ComponentSpectrum>& spectra) {
    json comps = json::array();
    for (const auto& s : spectra) {
        json c;
        c["name"] = s.name;
        c["order"] = s.order;
        c["flat"] = s.flat;
        c["sigma2"] = jnum(s.fit.sigma2(s.order));
        c["coefficients"] = jvec(s.fit.coeffs(s.order));
        c["bic_path"] = jvec(s.fit.criterion_path);
        comps.push_back(c);
    }
    json j;
    j["components"] = comps;
    return j;
}

void write_spectrum_csv(std::ostream& os, const std::vector<ComponentSpectrum>& spectra) {
    os << "omega";
    for (const auto& s : spectra) os << ',' << s.name;
    os << "\n";
    const auto& omega = spectra.front().curve.omega;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        os << csv_num(omega[i]);
        for (const auto& s : spectra) os << ',' << csv_num(s.curve.density[i]);
        os << "\n";
    }
}

json copspec_report(const LpSeries& series, int h_max, double u, double v, int points) {
    std::vector<ComomentMatrix> mats;
    mats.reserve(h_max);
    for (int h = 1; h <= h_max; ++h) {
        mats.push_back(bic_smooth(lp_comoment_matrix(series, h)));
    }
    const auto omega = default_omega_grid(static_cast<std::size_t>(points));
    const CopulaSpectrum spec =
        copula_spectral_density(series.basis, mats, u, v, omega);
    json j;
    j["u"] = jnum(u);
    j["v"] = jnum(v);
    j["h_max"] = h_max;
    j["omega"] = jvec(spec.curve.omega);
    j["density"] = jvec(spec.curve.density);
    j["max_imag"] = jnum(spec.max_imag);
    return j;
}

json var_report(const VarModel& model, const ResidualReport& resid) {
    json j;
    j["components"] = model.components;
    j["order"] = model.order;
    json mats = json::array();
    for (const auto& a : model.coeff) {
        json m = json::array();
        for (const auto& row : a) m.push_back(jvec(row));
        mats.push_back(m);
    }
    j["A"] = mats;
    json sig = json::array();
    for (const auto& row : model.sigma) sig.push_back(jvec(row));
    j["sigma"] = sig;
    j["bic_trace"] = jvec(model.bic_path);
    j["n_obs"] = model.n_obs;
    j["spectral_radius"] = jnum(model.spectral_radius);
    j["stable"] = model.stable;
    json r;
    r["band"] = jnum(resid.band);
    json acf = json::array();
    for (const auto& row : resid.acf) acf.push_back(jvec(row));
    r["acf"] = acf;
    r["fraction_outside"] = jnum(resid.fraction_outside);
    r["pass"] = resid.pass;
    j["residual_diagnostics"] = r;
    return j;
}

json forecast_report(const VarModel& model, const LpSeries& series, int steps) {
    std::vector<std::vector<double>> history;
    const std::size_t from =
        series.length > static_cast<std::size_t>(model.order)
            ? series.length - static_cast<std::size_t>(model.order)
            : 0;
    for (std::size_t t = from; t < series.length; ++t) {
        std::vector<double> row;
        row.reserve(model.components.size());
        for (int comp : model.components) row.push_back(series.ys[comp - 1][t]);
        history.push_back(std::move(row));
    }
    const auto fc = var_forecast(model, history, steps);
    json j;
    j["components"] = model.components;
    j["order"] = model.order;
    j["steps"] = steps;
    json rows = json::array();
    for (const auto& row : fc) rows.push_back(jvec(row));
    j["forecast"] = rows;
    return j;
}

namespace {

json config_json(const PipelineConfig& cfg) {
    json j;
    j["input"] = cfg.input;
    j["column"] = cfg.column;
    j["as_returns"] = cfg.as_returns;
    j["k"] = cfg.k;
    j["k_moments"] = cfg.k_moments;
    j["tail_threshold"] = jnum(cfg.tail_threshold);
    j["lag"] = cfg.lag;
    j["max_lag"] = cfg.max_lag;
    j["grid"] = cfg.grid;
    j["points"] = cfg.points;
    j["levels"] = jvec(cfg.levels);
    j["u_grid"] = cfg.u_grid;
    j["n_sim"] = cfg.n_sim;
    j["seed"] = cfg.seed;
    j["max_order"] = cfg.max_order;
    j["spec_points"] = cfg.spec_points;
    j["copspec_h"] = cfg.copspec_h;
    j["copspec_u"] = jnum(cfg.copspec_u);
    j["copspec_v"] = jnum(cfg.copspec_v);
    j["components"] = cfg.components;
    return j;
}

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw DataError("cannot write output file: " + p.string());
    out << text;
}

void write_json_file(const fs::path& p, const json& j) {
    write_text(p, j.dump(2) + "\n");
}

} // namespace

int run_pipeline(PipelineConfig cfg) {
    if (cfg.out.empty()) throw DataError("run requires --out DIR");
    cfg.materialize_seed();

    fs::create_directories(cfg.out);
    const fs::path dir(cfg.out);

    json manifest;
    manifest["version"] = kVersion;
    manifest["seed"] = cfg.seed;
    manifest["config"] = config_json(cfg);
    manifest["conventions"] = {{"variance_divisor", "T"},
                               {"quantile", "left-continuous step inverse"},
                               {"comoment_normalization", "1/(T-h)"}};
    json& stages = manifest["stages"];

    bool any_failed = false;
    auto stage = [&](const std::string& name, const std::function<void()>& body,
                     bool runnable) {
        if (!runnable) {
            stages[name] = {{"status", "skipped"}};
            return false;
        }
        try {
            body();
            stages[name]["status"] = "ok";
            return true;
        } catch (const std::exception& e) {
            stages[name] = {{"status", "error"}, {"error", e.what()}};
            any_failed = true;
            return false;
        }
    };

    std::optional<SeriesSample> sample;
    int exit_code = 0;
    try {
        sample.emplace(load_sample(cfg));
        manifest["input"] = {{"rows", sample->size()}, {"column", cfg.column}};
    } catch (const std::exception& e) {
        manifest["input"] = {{"error", e.what()}};
        write_json_file(dir / "manifest.json", manifest);
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }

    std::optional<LpSeries> series;
    bool have_series = stage("transform", [&] {
        series.emplace(lp_transform(*sample, cfg.k));
        std::ostringstream os;
        write_transform_csv(os, *series);
        write_text(dir / "transform.csv", os.str());
        stages["transform"]["file"] = "transform.csv";
    }, true);

    stage("qiq", [&] {
        write_json_file(dir / "qiq.json", qiq_report(*sample, cfg.points));
        stages["qiq"]["file"] = "qiq.json";
    }, true);

    stage("moments", [&] {
        write_json_file(dir / "moments.json",
                        moments_report(*sample, cfg.k_moments, cfg.tail_threshold));
        stages["moments"]["file"] = "moments.json";
    }, true);

    std::optional<CopulaModel> model;
    bool have_model = stage("comoment", [&] {
        ComomentMatrix m = bic_smooth(lp_comoment_matrix(*series, cfg.lag));
        write_json_file(dir / "comoment.json", comoment_report(*series, m));
        stages["comoment"]["file"] = "comoment.json";
        model.emplace(CopulaModel::serial(*series, std::move(m)));
    }, have_series);

    stage("correlogram", [&] {
        write_json_file(dir / "correlogram.json",
                        correlogram_report(*series, cfg.max_lag));
        stages["correlogram"]["file"] = "correlogram.json";
    }, have_series);

    stage("autolpinfor", [&] {
        write_json_file(dir / "autolpinfor.json",
                        autolpinfor_report(*series, cfg.max_lag, cfg.granger));
        stages["autolpinfor"]["file"] = "autolpinfor.json";
    }, have_series);

    stage("copula", [&] {
        std::ostringstream os;
        write_copula_csv(os, *model, cfg.grid);
        write_text(dir / "copula.csv", os.str());
        stages["copula"]["file"] = "copula.csv";
    }, have_model);

    stage("nonstat", [&] {
        write_json_file(dir / "nonstat.json", nonstat_report(*sample, cfg.k));
        stages["nonstat"]["file"] = "nonstat.json";
    }, true);

    stage("quantcorr", [&] {
        write_json_file(dir / "quantcorr.json",
                        quantcorr_report(*sample, *model, cfg.lag, cfg.points));
        stages["quantcorr"]["file"] = "quantcorr.json";
    }, have_model);

    stage("condinfor", [&] {
        write_json_file(dir / "condinfor.json", condinfor_report(*model, cfg.points));
        stages["condinfor"]["file"] = "condinfor.json";
    }, have_model);

    stage("condquant", [&] {
        std::ostringstream os;
        json meta;
        write_condquant_csv(os, *model, cfg.u_grid, cfg.levels, cfg.n_sim, cfg.seed,
                            &meta);
        write_text(dir / "condquant.csv", os.str());
        stages["condquant"]["file"] = "condquant.csv";
        stages["condquant"]["meta"] = meta;
    }, have_model);

    stage("blomqvist", [&] {
        std::vector<int> comps(series->k());
        for (int i = 0; i < series->k(); ++i) comps[i] = i + 1;
        write_json_file(dir / "blomqvist.json",
                        blomqvist_report(*sample, cfg.lag, cfg.k, comps));
        stages["blomqvist"]["file"] = "blomqvist.json";
    }, have_series);

    std::optional<std::vector<ComponentSpectrum>> spectra;
    bool have_spectra = stage("spectrum", [&] {
        spectra.emplace(lp_spectrum(*series, cfg.max_order,
                                    default_omega_grid(cfg.spec_points)));
        write_json_file(dir / "spectrum.json", spectrum_report(*spectra));
        std::ostringstream os;
        write_spectrum_csv(os, *spectra);
        write_text(dir / "spectrum.csv", os.str());
        stages["spectrum"]["files"] = {"spectrum.json", "spectrum.csv"};
    }, have_series);

    stage("copspec", [&] {
        write_json_file(dir / "copspec.json",
                        copspec_report(*series, cfg.copspec_h, cfg.copspec_u,
                                       cfg.copspec_v, cfg.spec_points));
        stages["copspec"]["file"] = "copspec.json";
    }, have_series);

    stage("var", [&] {
        std::vector<int> comps = cfg.components;
        if (comps.empty() && have_spectra) {
            for (int j = 1; j <= series->k(); ++j) {
                if (!(*spectra)[j].flat) comps.push_back(j); // [0] is Z
            }
        }
        if (comps.empty()) {
            for (int j = 1; j <= series->k(); ++j) comps.push_back(j);
        }
        const VarModel vm = fit_var(*series, comps, cfg.max_order);
        const ResidualReport rep = residual_diagnostics(vm, *series);
        json j = var_report(vm, rep);
        j["forecast"] = forecast_report(vm, *series, cfg.steps)["forecast"];
        write_json_file(dir / "var.json", j);
        stages["var"]["file"] = "var.json";
    }, have_series);

    write_json_file(dir / "manifest.json", manifest);
    if (any_failed) exit_code = 4;
    return exit_code;
}

} // namespace lptime::cli

#pragma once

// Scenario orchestration: validated configs drive the four core modules and
// emit deterministic artifacts (17-significant-digit CSVs, JSON summaries, a
// manifest with checksums). Sweeps run independent scenarios, optionally on a
// small worker pool, and aggregate headline metrics.

#include "geovlasov/config.hpp"
#include "geovlasov/expression.hpp"
#include "geovlasov/field.hpp"
#include "geovlasov/kernel_quadrature.hpp"
#include "geovlasov/linear.hpp"
#include "geovlasov/version.hpp"
#include "geovlasov/vlasov.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

namespace geovlasov {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// formatting, hashing, artifact bookkeeping

inline std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::uint64_t fnv1a64_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + p.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= std::uint64_t(static_cast<unsigned char>(c));
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v)
{
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::vector<std::string>& header) : out_(path)
    {
        if (!out_)
            throw std::runtime_error("cannot write " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }

    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

/// Output directory with failure cleanup: files registered here are removed
/// if the scenario throws before the manifest is written.
class ArtifactDir {
public:
    explicit ArtifactDir(const fs::path& dir) : dir_(dir) { fs::create_directories(dir_); }

    fs::path file(const std::string& name)
    {
        const fs::path p = dir_ / name;
        created_.push_back(p);
        return p;
    }

    const fs::path& dir() const { return dir_; }
    const std::vector<fs::path>& files() const { return created_; }

    void discard()
    {
        for (const auto& p : created_) {
            std::error_code ec;
            fs::remove(p, ec);
        }
        created_.clear();
    }

private:
    fs::path dir_;
    std::vector<fs::path> created_;
};

// ---------------------------------------------------------------------------
// builders from config trees

inline EquilibriumProfile profile_from_json(const json& p)
{
    const std::string type = require_key(p, "type", "profile.").get<std::string>();
    const double width = number_or(p, "width", 1.0);
    if (type == "maxwellian") {
        const double mass = require_number(p, "mass", "profile.");
        return EquilibriumProfile::maxwellian(mass, number_or(p, "center", 0.0), width);
    }
    if (type == "two_stream") {
        const double u = require_number(p, "u", "profile.");
        const double mass = require_number(p, "mass", "profile.");
        return EquilibriumProfile::two_stream(u, mass, width);
    }
    throw config_error("profile.type must be maxwellian|two_stream, got '" + type + "'");
}

inline PhaseGrid grid_from_json(Curvature manifold, const json& g)
{
    const int nx = int_or(g, "nx", 128);
    const int nv = int_or(g, "nv", 256);
    const double V = number_or(g, "V", 8.0);
    if (manifold == Curvature::sphere)
        return PhaseGrid::circle(nx, nv, V);
    return PhaseGrid::line(nx, nv, number_or(g, "L", 16.0), V);
}

inline DistributionField initial_state_from_json(const PhaseGrid& grid, const json& init)
{
    const std::string type = require_key(init, "type", "initial.").get<std::string>();
    const double eps = number_or(init, "epsilon", 0.0);
    const bool circle = grid.manifold == Curvature::sphere;
    const double mode = number_or(init, "mode", 1.0);
    const double xw = number_or(init, "x_width", 2.0);

    const auto envelope = [&](double x) {
        if (circle)
            return 1.0 + eps * std::cos(mode * x);
        return 1.0 + eps * std::exp(-0.5 * x * x / (xw * xw));
    };

    if (type == "maxwellian" || type == "two_stream") {
        json pj = init;
        pj["type"] = type;
        const auto profile = profile_from_json(pj);
        return make_state(grid,
                          [&](double x, double v) { return profile.value(v) * envelope(x); });
    }
    if (type == "custom_expression") {
        const auto expr =
            Expression::parse(require_key(init, "expr", "initial.").get<std::string>());
        return make_state(grid, [&](double x, double v) { return expr(x, v); });
    }
    throw config_error("initial.type must be maxwellian|two_stream|custom_expression");
}

// ---------------------------------------------------------------------------
// individual scenarios; each returns its headline metrics

namespace detail {

inline json run_kernel_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const Curvature manifold =
        curvature_from_name(require_key(cfg.params, "manifold", "").get<std::string>());
    CsvWriter csv(dir.file("kernel.csv"), {"mode_or_xi", "analytic", "quadrature", "abs_err"});
    double max_err = 0.0;
    if (manifold == Curvature::sphere) {
        const int modes = int_or(cfg.params, "modes", 0);
        if (modes < 1)
            throw config_error("kernel scenario on the sphere requires 'modes' >= 1");
        for (int k = 1; k <= modes; ++k) {
            const double a = kernel_fourier_circle(k);
            const double q = kernel_fourier_circle_quadrature(k);
            max_err = std::max(max_err, std::abs(a - q));
            csv.row({format_g17(k), format_g17(a), format_g17(q), format_g17(std::abs(a - q))});
        }
    } else {
        const json& xg = require_key(cfg.params, "xi_grid", "");
        const auto grid = log_spaced(require_number(xg, "min", "xi_grid."),
                                     require_number(xg, "max", "xi_grid."),
                                     int(require_number(xg, "n", "xi_grid.")));
        for (const double xi : grid) {
            const double a = kernel_fourier_line(xi);
            const double q = kernel_fourier_line_quadrature(xi);
            max_err = std::max(max_err, std::abs(a - q));
            csv.row({format_g17(xi), format_g17(a), format_g17(q), format_g17(std::abs(a - q))});
        }
    }
    return {{"max_abs_err", max_err}};
}

inline json run_field_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const Curvature manifold =
        curvature_from_name(require_key(cfg.params, "manifold", "").get<std::string>());
    const json& dj = require_key(cfg.params, "density", "");
    const std::string dtype = require_key(dj, "type", "density.").get<std::string>();
    const double mass = number_or(dj, "mass", 1.0);
    const int n = int_or(cfg.params, "eval_grid", 24);
    const int quad_nodes = int_or(cfg.params, "quad_nodes", 256);
    const double alpha_max = number_or(cfg.params, "alpha_max", 8.0);
    const double alpha_span = (manifold == Curvature::sphere) ? pi : 0.75 * alpha_max;

    const bool is_point = dtype == "point";
    PointMassDensity point{AmbientPoint::from_angles(0.0, 0.0, manifold), mass};
    SurfaceDensity smooth;
    if (dtype == "uniform") {
        if (manifold == Curvature::hyperbolic)
            throw config_error("density.type 'uniform' is not integrable on the hyperbolic sphere");
        smooth = SurfaceDensity::from_function(manifold, quad_nodes, quad_nodes,
                                               [&](double, double) { return mass / (4.0 * pi); });
    } else if (dtype == "gaussian") {
        const double w = require_number(dj, "width", "density.");
        smooth = SurfaceDensity::from_function(
            manifold, quad_nodes, quad_nodes,
            [&](double a, double) { return mass * std::exp(-0.5 * a * a / (w * w)); },
            manifold == Curvature::sphere ? -1.0 : alpha_max);
    } else if (!is_point) {
        throw config_error("density.type must be point|uniform|gaussian");
    }

    CsvWriter csv(dir.file("field.csv"), {"alpha", "theta", "U", "F_alpha", "F_theta"});
    double max_tangency = 0.0;
    for (int i = 0; i < n; ++i) {
        const double alpha = alpha_span * (double(i) + 0.5) / double(n);
        for (int j = 0; j < n; ++j) {
            const double theta = 2.0 * pi * (double(j) + 0.5) / double(n);
            const auto x = AmbientPoint::from_angles(alpha, theta, manifold);
            const double U = is_point ? potential_at(point, x) : potential_at(smooth, x);
            const Vec3 F = is_point ? field_at(point, x).components()
                                    : field_at(smooth, x).components();
            max_tangency = std::max(max_tangency, std::abs(sdot(F, x.coords(), manifold)));
            csv.row({format_g17(alpha), format_g17(theta), format_g17(U),
                     format_g17(sdot(F, e_alpha(alpha, theta, manifold), manifold)),
                     format_g17(sdot(F, e_theta(theta), manifold))});
        }
    }

    json flux = json::array();
    if (cfg.params.contains("gauss_alpha")) {
        if (manifold != Curvature::sphere)
            throw config_error("gauss_alpha applies to the sphere only");
        for (const auto& av : cfg.params.at("gauss_alpha")) {
            const double a = av.get<double>();
            const double f = is_point ? gauss_flux(point, a) : gauss_flux(smooth, a);
            flux.push_back({{"alpha", a}, {"flux", f}});
        }
    }
    json summary = {{"manifold", curvature_name(manifold)},
                    {"density_type", dtype},
                    {"mass", is_point ? mass : smooth.total_mass()},
                    {"max_tangency_residual", max_tangency},
                    {"flux", flux}};
    std::ofstream(dir.file("summary.json")) << summary.dump(2) << "\n";
    return {{"max_tangency_residual", max_tangency}};
}

inline json run_simulate_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const Curvature manifold =
        curvature_from_name(require_key(cfg.params, "manifold", "").get<std::string>());
    const PhaseGrid grid = grid_from_json(manifold, require_key(cfg.params, "grid", ""));
    const json& tj = require_key(cfg.params, "time", "");
    const double T = require_number(tj, "T", "time.");
    const double dt = number_or(tj, "dt", 1.0 / 32.0);
    if (!(T > 0.0) || !(dt > 0.0))
        throw config_error("time.T and time.dt must be > 0");

    auto f0 = initial_state_from_json(grid, require_key(cfg.params, "initial", ""));

    RunOptions opt;
    opt.cadence = int_or(tj, "cadence", 8);
    opt.forces_enabled = bool_or(tj, "forces", true);
    auto result = run(std::move(f0), T, dt, opt);

    std::vector<std::string> header = {"time",    "mass",     "e_kin",        "e_pot",
                                       "e_mech", "e_consistent", "entropy",  "casimir_s2",
                                       "min_f",   "max_force", "v_boundary_max"};
    for (std::size_t m = 0; m < result.history.front().mode_labels.size(); ++m)
        header.push_back("rho_mode" + std::to_string(m + 1) + "_abs");
    CsvWriter diag(dir.file("diagnostics.csv"), header);
    CsvWriter modes(dir.file("rho_modes.csv"), {"time", "mode", "abs", "arg"});
    for (const auto& rec : result.history) {
        std::vector<std::string> cells = {
            format_g17(rec.time),      format_g17(rec.mass),
            format_g17(rec.e_kin),     format_g17(rec.e_pot),
            format_g17(rec.e_mech),   format_g17(rec.e_consistent),
            format_g17(rec.entropy),   format_g17(rec.casimirs.front().second),
            format_g17(rec.min_f),     format_g17(rec.max_force),
            format_g17(rec.v_boundary_max)};
        for (const auto& z : rec.rho_modes)
            cells.push_back(format_g17(std::abs(z)));
        diag.row(cells);
        for (std::size_t m = 0; m < rec.rho_modes.size(); ++m)
            modes.row({format_g17(rec.time), format_g17(rec.mode_labels[m]),
                       format_g17(std::abs(rec.rho_modes[m])),
                       format_g17(std::arg(rec.rho_modes[m]))});
    }

    if (bool_or(cfg.params.contains("outputs") ? cfg.params.at("outputs") : json::object(),
                "f_final", false)) {
        const auto& st = result.state;
        std::ofstream bin(dir.file("f_final.bin"), std::ios::binary);
        bin.write(reinterpret_cast<const char*>(st.values.data()),
                  std::streamsize(st.values.size() * sizeof(double)));
        json side = {{"nx", st.grid.nx},
                     {"nv", st.grid.nv},
                     {"V", st.grid.V},
                     {"L", st.grid.L},
                     {"manifold", curvature_name(manifold)},
                     {"time", st.time},
                     {"layout", "row-major f[ix][iv], x index outer"},
                     {"dtype", "float64"}};
        std::ofstream(dir.file("f_final.json")) << side.dump(2) << "\n";
    }

    const auto drift = [](double a, double b) {
        const double scale = std::abs(a) > 1e-300 ? std::abs(a) : 1.0;
        return std::abs(b - a) / scale;
    };
    const auto& h0 = result.history.front();
    json headline{{"mass_drift", 0.0},
                  {"energy_drift", 0.0},
                  {"entropy_drift", 0.0},
                  {"casimir_s2_drift", 0.0},
                  {"max_force", 0.0}};
    for (const auto& rec : result.history) {
        headline["mass_drift"] = std::max(headline["mass_drift"].get<double>(),
                                          drift(h0.mass, rec.mass));
        headline["energy_drift"] = std::max(headline["energy_drift"].get<double>(),
                                            drift(h0.e_consistent, rec.e_consistent));
        headline["entropy_drift"] = std::max(headline["entropy_drift"].get<double>(),
                                             drift(h0.entropy, rec.entropy));
        headline["casimir_s2_drift"] =
            std::max(headline["casimir_s2_drift"].get<double>(),
                     drift(h0.casimirs.front().second, rec.casimirs.front().second));
        headline["max_force"] =
            std::max(headline["max_force"].get<double>(), rec.max_force);
    }
    return headline;
}

inline json run_linear_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const Curvature manifold =
        curvature_from_name(require_key(cfg.params, "manifold", "").get<std::string>());
    const auto profile = profile_from_json(require_key(cfg.params, "profile", ""));
    const double T = number_or(cfg.params, "T", 100.0);
    const double h = number_or(cfg.params, "h", 1e-2);
    const double eps = number_or(cfg.params, "epsilon", 1e-5);
    const int thin = std::max(1, int(std::llround(T / h)) / 2000);

    CsvWriter csv(dir.file("volterra.csv"), {"t", "mode", "abs_phi", "arg_phi"});
    json fits = json::object();

    if (manifold == Curvature::sphere) {
        std::vector<long long> modes = {1};
        if (cfg.params.contains("modes")) {
            modes.clear();
            for (const auto& m : cfg.params.at("modes"))
                modes.push_back(m.get<long long>());
        }
        const json fw = cfg.params.contains("fit_window") ? cfg.params.at("fit_window")
                                                          : json::object();
        const double flo = number_or(fw, "lo", std::min(2.0, 0.2 * T));
        const double fhi = number_or(fw, "hi", T);
        json per_mode = json::array();
        for (const long long k : modes) {
            const CosinePerturbation h0{eps, k, profile};
            const auto problem = make_mode_problem(profile, manifold, k, h0, T, h);
            const auto phi = solve_volterra(problem);
            std::vector<double> ts(phi.size()), ys(phi.size());
            for (std::size_t i = 0; i < phi.size(); ++i) {
                ts[i] = problem.t[i];
                ys[i] = std::abs(phi[i]);
                if (i % std::size_t(thin) == 0 || i + 1 == phi.size())
                    csv.row({format_g17(ts[i]), format_g17(double(k)), format_g17(ys[i]),
                             format_g17(std::arg(phi[i]))});
            }
            const auto fit = fit_decay(ts, ys, DecayModel::exponential, flo, fhi);
            per_mode.push_back({{"mode", k},
                                {"model", decay_model_name(fit.model)},
                                {"rate", fit.rate},
                                {"r_squared", fit.r_squared},
                                {"window", {fit.window_lo, fit.window_hi}},
                                {"samples", fit.samples_used}});
        }
        fits["per_mode"] = per_mode;
        fits["headline"] = per_mode.front();
    } else {
        const json xg = cfg.params.contains("xi_grid") ? cfg.params.at("xi_grid")
                                                       : json::object();
        const auto grid = log_spaced(number_or(xg, "min", 1e-2), number_or(xg, "max", 10.0),
                                     int_or(xg, "n", 64));
        const double lambda_prime = number_or(cfg.params, "lambda_prime", 0.1);
        const GaussianBumpPerturbation h0{eps, number_or(cfg.params, "x_width", 2.0), profile};

        // per-mode solutions go to the CSV, the aggregated norm to the fit
        for (const double xi : grid) {
            const auto problem = make_mode_problem(profile, manifold, xi, h0, T, h);
            const auto phi = solve_volterra(problem);
            for (std::size_t i = 0; i < phi.size(); i += std::size_t(thin) * 8)
                csv.row({format_g17(problem.t[i]), format_g17(xi),
                         format_g17(std::abs(phi[i])), format_g17(std::arg(phi[i]))});
        }
        const auto series = hyperbolic_decay_study(profile, h0, grid, T, h, lambda_prime);
        const json fw = cfg.params.contains("fit_window") ? cfg.params.at("fit_window")
                                                          : json::object();
        const double flo = number_or(fw, "lo", std::min(10.0, 0.1 * T));
        const double fhi = number_or(fw, "hi", T);
        const auto fit = fit_decay(series.t, series.norm, DecayModel::algebraic, flo, fhi);
        json norm_series = json::array();
        for (std::size_t i = 0; i < series.t.size(); i += std::size_t(thin) * 10)
            norm_series.push_back({series.t[i], series.norm[i]});
        fits["norm_fit"] = {{"model", decay_model_name(fit.model)},
                            {"rate", fit.rate},
                            {"r_squared", fit.r_squared},
                            {"window", {fit.window_lo, fit.window_hi}},
                            {"samples", fit.samples_used},
                            {"lambda_prime", lambda_prime}};
        fits["norm_series"] = norm_series;
        fits["headline"] = fits["norm_fit"];
    }
    std::ofstream(dir.file("decay_fit.json")) << fits.dump(2) << "\n";
    return {{"rate", fits["headline"]["rate"]},
            {"r_squared", fits["headline"]["r_squared"]}};
}

inline json run_penrose_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const Curvature manifold =
        curvature_from_name(require_key(cfg.params, "manifold", "").get<std::string>());
    const auto profile = profile_from_json(require_key(cfg.params, "profile", ""));
    PenroseOptions opt;
    opt.window = number_or(cfg.params, "window", opt.window);
    const auto report = penrose_check(profile, manifold, opt);

    json cps = json::array();
    double min_margin = std::numeric_limits<double>::infinity();
    for (const auto& cp : report.critical_points) {
        cps.push_back({{"omega", cp.omega},
                       {"principal_value", cp.principal_value},
                       {"margin", cp.margin}});
        min_margin = std::min(min_margin, cp.margin);
    }
    json mm = json::array();
    for (const auto& [k, margin] : report.mode_margins)
        mm.push_back({{"mode", k}, {"margin", margin}});
    json doc = {{"manifold", curvature_name(report.manifold)},
                {"threshold", report.threshold},
                {"critical_points", cps},
                {"mode_margins", mm},
                {"verdict", verdict_name(report.verdict)},
                {"note", report.note}};
    std::ofstream(dir.file("penrose.json")) << doc.dump(2) << "\n";
    return {{"min_margin", report.critical_points.empty() ? 0.0 : min_margin},
            {"verdict", verdict_name(report.verdict)}};
}

inline json run_fit_scenario(const ScenarioConfig& cfg, ArtifactDir& dir)
{
    const std::string input = require_key(cfg.params, "input", "").get<std::string>();
    const std::string model_name = string_or(cfg.params, "model", "exponential");
    DecayModel model;
    if (model_name == "exponential")
        model = DecayModel::exponential;
    else if (model_name == "algebraic")
        model = DecayModel::algebraic;
    else
        throw config_error("fit model must be exponential|algebraic");
    const int tcol = int_or(cfg.params, "t_col", 0);
    const int ycol = int_or(cfg.params, "y_col", 1);

    std::ifstream in(input);
    if (!in)
        throw config_error("fit: cannot open input '" + input + "'");
    std::vector<double> ts, ys;
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        if (int(cells.size()) <= std::max(tcol, ycol))
            continue;
        try {
            std::size_t ut = 0, uy = 0;
            const double tv = std::stod(cells[tcol], &ut);
            const double yv = std::stod(cells[ycol], &uy);
            ts.push_back(tv);
            ys.push_back(yv);
        } catch (const std::exception&) {
            continue; // header or malformed row
        }
    }
    const json fw = cfg.params.contains("window") ? cfg.params.at("window") : json::object();
    const double lo = number_or(fw, "lo", ts.empty() ? 0.0 : ts.front());
    const double hi = number_or(fw, "hi", ts.empty() ? 1.0 : ts.back());
    const auto fit = fit_decay(ts, ys, model, lo, hi);
    json doc = {{"model", decay_model_name(fit.model)},
                {"rate", fit.rate},
                {"r_squared", fit.r_squared},
                {"window", {fit.window_lo, fit.window_hi}},
                {"samples", fit.samples_used}};
    std::ofstream(dir.file("decay_fit.json")) << doc.dump(2) << "\n";
    return {{"rate", fit.rate}, {"r_squared", fit.r_squared}};
}

} // namespace detail

// ---------------------------------------------------------------------------
// driver

/// Run one scenario; writes its artifacts plus manifest.json and returns the
/// manifest. Partial outputs are removed when the scenario fails.
inline json run_scenario(const ScenarioConfig& cfg)
{
    ArtifactDir dir(cfg.out_dir);
    const auto t0 = std::chrono::steady_clock::now();
    json headline;
    try {
        if (cfg.kind == "kernel")
            headline = detail::run_kernel_scenario(cfg, dir);
        else if (cfg.kind == "field")
            headline = detail::run_field_scenario(cfg, dir);
        else if (cfg.kind == "simulate")
            headline = detail::run_simulate_scenario(cfg, dir);
        else if (cfg.kind == "linear")
            headline = detail::run_linear_scenario(cfg, dir);
        else if (cfg.kind == "penrose")
            headline = detail::run_penrose_scenario(cfg, dir);
        else if (cfg.kind == "fit")
            headline = detail::run_fit_scenario(cfg, dir);
        else
            throw config_error("unknown scenario kind '" + cfg.kind
                               + "' (simulate|linear|penrose|kernel|field|fit)");
    } catch (...) {
        dir.discard();
        throw;
    }
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    json outputs = json::object();
    for (const auto& p : dir.files())
        outputs[p.filename().string()] = hex64(fnv1a64_file(p));
    json manifest = {{"kind", cfg.kind},       {"config", cfg.params},
                     {"version", version_string}, {"wall_time_s", wall},
                     {"seed", cfg.seed},       {"headline", headline},
                     {"outputs", outputs}};
    std::ofstream(dir.dir() / "manifest.json") << manifest.dump(2) << "\n";
    return manifest;
}

struct SweepEntry {
    json value;
    std::string status; // "ok" or the error text
    json manifest;      // empty on failure
};

/// Independent scenarios along one config axis; per-run failures are recorded
/// and the sweep continues. Results keep the order of `values`.
inline std::vector<SweepEntry> sweep(const ScenarioConfig& base, const std::string& axis,
                                     const std::vector<json>& values, int workers = 1)
{
    if (values.empty())
        throw config_error("sweep: empty value list");
    if (workers < 1)
        throw config_error("sweep: workers must be >= 1");
    fs::create_directories(base.out_dir);

    std::vector<SweepEntry> entries(values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size())
                return;
            ScenarioConfig cfg = base;
            set_config_path(cfg.params, axis, values[i]);
            std::string label = values[i].dump();
            for (auto& c : label)
                if (c == '/' || c == '"' || c == ' ')
                    c = '_';
            cfg.out_dir = base.out_dir / (axis + "=" + label);
            entries[i].value = values[i];
            try {
                entries[i].manifest = run_scenario(cfg);
                entries[i].status = "ok";
            } catch (const std::exception& e) {
                entries[i].status = e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    // aggregate headline metrics
    std::vector<std::string> metric_keys;
    for (const auto& e : entries) {
        if (e.status == "ok") {
            for (const auto& [k, v] : e.manifest.at("headline").items())
                metric_keys.push_back(k);
            break;
        }
    }
    std::vector<std::string> header = {"axis", "value", "status"};
    header.insert(header.end(), metric_keys.begin(), metric_keys.end());
    CsvWriter csv(base.out_dir / "sweep.csv", header);
    for (const auto& e : entries) {
        std::vector<std::string> cells = {axis, e.value.dump(),
                                          e.status == "ok" ? "ok" : "error"};
        for (const auto& k : metric_keys) {
            if (e.status == "ok" && e.manifest.at("headline").contains(k)) {
                const auto& v = e.manifest.at("headline").at(k);
                cells.push_back(v.is_number() ? format_g17(v.get<double>()) : v.dump());
            } else {
                cells.push_back("");
            }
        }
        csv.row(cells);
    }
    return entries;
}

} // namespace geovlasov

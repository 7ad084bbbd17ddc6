// geovlasov: kinetic dynamics and linear stability on the unit sphere and
// unit hyperbolic sphere, reduced to a geodesic. Subcommands map onto the
// scenario runner; every parameter can also come from a JSON or TOML config
// (flags override file values). Exit codes: 0 ok, 2 validation error,
// 1 runtime error.

#include "CLI11.hpp"

#include "geovlasov/geovlasov.hpp"

#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using geovlasov::config_error;
using geovlasov::json;

json parse_profile_flag(const std::string& arg)
{
    // maxwellian:mass[,center[,width]] | two_stream:u,mass[,width]
    const auto colon = arg.find(':');
    if (colon == std::string::npos)
        throw config_error("profile must be maxwellian:...|two_stream:...");
    const std::string type = arg.substr(0, colon);
    std::vector<double> args;
    std::stringstream ss(arg.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ','))
        args.push_back(std::stod(item));
    if (type == "maxwellian") {
        if (args.empty())
            throw config_error("maxwellian profile needs a mass");
        json p = {{"type", "maxwellian"}, {"mass", args[0]}};
        if (args.size() > 1)
            p["center"] = args[1];
        if (args.size() > 2)
            p["width"] = args[2];
        return p;
    }
    if (type == "two_stream") {
        if (args.size() < 2)
            throw config_error("two_stream profile needs u,mass");
        json p = {{"type", "two_stream"}, {"u", args[0]}, {"mass", args[1]}};
        if (args.size() > 2)
            p["width"] = args[2];
        return p;
    }
    throw config_error("unknown profile type '" + type + "'");
}

json parse_density_flag(const std::string& arg)
{
    if (arg == "point")
        return {{"type", "point"}};
    if (arg == "uniform")
        return {{"type", "uniform"}};
    if (arg.rfind("gaussian:", 0) == 0)
        return {{"type", "gaussian"}, {"width", std::stod(arg.substr(9))}};
    throw config_error("density must be point|uniform|gaussian:width");
}

json parse_grid_flag(const std::string& arg)
{
    // min:max:n
    double lo = 0.0, hi = 0.0;
    int n = 0;
    if (std::sscanf(arg.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
        throw config_error("grid range must be min:max:n, got '" + arg + "'");
    return {{"min", lo}, {"max", hi}, {"n", n}};
}

std::vector<long long> parse_modes_flag(const std::string& arg)
{
    // "1..9" or "1,3,5"
    std::vector<long long> modes;
    const auto dots = arg.find("..");
    if (dots != std::string::npos) {
        const long long a = std::stoll(arg.substr(0, dots));
        const long long b = std::stoll(arg.substr(dots + 2));
        for (long long k = a; k <= b; ++k)
            modes.push_back(k);
        return modes;
    }
    std::stringstream ss(arg);
    std::string item;
    while (std::getline(ss, item, ','))
        modes.push_back(std::stoll(item));
    return modes;
}

json base_params(const std::string& config_path)
{
    if (config_path.empty())
        return json::object();
    return geovlasov::load_config_file(config_path);
}

int run_with_exit_codes(const std::function<void()>& body)
{
    try {
        body();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"curved gravitational Vlasov-Poisson toolkit"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    int workers = 1;
    app.add_option("--config", config_path, "JSON or TOML config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "sweep worker count");

    // kernel
    auto* kernel = app.add_subcommand("kernel", "interaction-kernel transforms vs quadrature")->fallthrough();
    std::string k_manifold = "sphere", k_xigrid;
    int k_modes = 0;
    kernel->add_option("--manifold", k_manifold, "sphere|hyperbolic");
    kernel->add_option("--modes", k_modes, "circle modes 1..N");
    kernel->add_option("--xi-grid", k_xigrid, "line frequencies min:max:n (log spaced)");

    // field
    auto* field = app.add_subcommand("field", "2-D potential/field maps and Gauss flux")->fallthrough();
    std::string f_manifold = "sphere", f_density = "point", f_alphas;
    int f_grid = 24;
    double f_alpha_max = 8.0;
    field->add_option("--manifold", f_manifold, "sphere|hyperbolic");
    field->add_option("--density", f_density, "point|uniform|gaussian:width");
    field->add_option("--eval-grid", f_grid, "evaluation grid size n (n x n)");
    field->add_option("--gauss-alpha", f_alphas, "comma list of flux colatitudes");
    field->add_option("--alpha-max", f_alpha_max, "hyperbolic truncation radius");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "nonlinear reduced kinetic run")->fallthrough();

    // linear
    auto* linear = app.add_subcommand("linear", "Volterra mode solutions and decay fits")->fallthrough();
    std::string l_manifold = "sphere", l_profile = "maxwellian:0.5", l_modes, l_xigrid;
    double l_T = -1.0, l_h = -1.0, l_eps = -1.0;
    linear->add_option("--manifold", l_manifold, "sphere|hyperbolic");
    linear->add_option("--profile", l_profile, "maxwellian:mass[,c,w]|two_stream:u,mass[,w]");
    linear->add_option("--modes", l_modes, "circle modes, e.g. 1,3 or 1..9");
    linear->add_option("--xi-grid", l_xigrid, "line probe grid min:max:n");
    linear->add_option("--T", l_T, "horizon");
    linear->add_option("--h", l_h, "time step");
    linear->add_option("--epsilon", l_eps, "perturbation amplitude");

    // penrose
    auto* penrose = app.add_subcommand("penrose", "Penrose stability report")->fallthrough();
    std::string p_manifold = "sphere", p_profile = "maxwellian:1";
    penrose->add_option("--manifold", p_manifold, "sphere|hyperbolic");
    penrose->add_option("--profile", p_profile, "maxwellian:mass[,c,w]|two_stream:u,mass[,w]");

    // fit
    auto* fit = app.add_subcommand("fit", "decay-model fit of a CSV series")->fallthrough();
    std::string fit_input, fit_model = "exponential", fit_window;
    int fit_tcol = 0, fit_ycol = 1;
    fit->add_option("--input", fit_input, "input CSV")->required();
    fit->add_option("--model", fit_model, "exponential|algebraic");
    fit->add_option("--window", fit_window, "fit window lo:hi");
    fit->add_option("--t-col", fit_tcol, "abscissa column");
    fit->add_option("--y-col", fit_ycol, "ordinate column");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "run a scenario along one config axis")->fallthrough();
    std::string s_axis, s_values;
    sweep_cmd->add_option("--axis", s_axis, "dotted config key, e.g. initial.epsilon")->required();
    sweep_cmd->add_option("--values", s_values, "comma list of values")->required();

    CLI11_PARSE(app, argc, argv);

    return run_with_exit_codes([&]() {
        json params = base_params(config_path);
        const auto finish = [&](const std::string& kind) {
            params["kind"] = kind;
            geovlasov::ScenarioConfig cfg = geovlasov::scenario_from_json(params, out_dir);
            if (app.count("--out") || !params.contains("out"))
                cfg.out_dir = out_dir;
            const json manifest = geovlasov::run_scenario(cfg);
            std::cout << manifest["headline"].dump() << "\n";
        };

        if (*kernel) {
            if (kernel->count("--manifold") || !params.contains("manifold"))
                params["manifold"] = k_manifold;
            if (kernel->count("--modes"))
                params["modes"] = k_modes;
            if (kernel->count("--xi-grid"))
                params["xi_grid"] = parse_grid_flag(k_xigrid);
            finish("kernel");
        } else if (*field) {
            if (field->count("--manifold") || !params.contains("manifold"))
                params["manifold"] = f_manifold;
            if (field->count("--density") || !params.contains("density"))
                params["density"] = parse_density_flag(f_density);
            if (field->count("--eval-grid") || !params.contains("eval_grid"))
                params["eval_grid"] = f_grid;
            if (field->count("--alpha-max") || !params.contains("alpha_max"))
                params["alpha_max"] = f_alpha_max;
            if (field->count("--gauss-alpha")) {
                json arr = json::array();
                std::stringstream ss(f_alphas);
                std::string item;
                while (std::getline(ss, item, ','))
                    arr.push_back(std::stod(item));
                params["gauss_alpha"] = arr;
            }
            finish("field");
        } else if (*simulate) {
            if (params.empty())
                throw config_error("simulate requires --config with manifold, grid, time, initial");
            finish("simulate");
        } else if (*linear) {
            if (linear->count("--manifold") || !params.contains("manifold"))
                params["manifold"] = l_manifold;
            if (linear->count("--profile") || !params.contains("profile"))
                params["profile"] = parse_profile_flag(l_profile);
            if (linear->count("--modes"))
                params["modes"] = parse_modes_flag(l_modes);
            if (linear->count("--xi-grid"))
                params["xi_grid"] = parse_grid_flag(l_xigrid);
            if (l_T > 0.0)
                params["T"] = l_T;
            if (l_h > 0.0)
                params["h"] = l_h;
            if (l_eps > 0.0)
                params["epsilon"] = l_eps;
            finish("linear");
        } else if (*penrose) {
            if (penrose->count("--manifold") || !params.contains("manifold"))
                params["manifold"] = p_manifold;
            if (penrose->count("--profile") || !params.contains("profile"))
                params["profile"] = parse_profile_flag(p_profile);
            finish("penrose");
        } else if (*fit) {
            params["input"] = fit_input;
            if (fit->count("--model") || !params.contains("model"))
                params["model"] = fit_model;
            if (!fit_window.empty()) {
                double lo = 0.0, hi = 0.0;
                if (std::sscanf(fit_window.c_str(), "%lf:%lf", &lo, &hi) != 2)
                    throw config_error("fit window must be lo:hi");
                params["window"] = {{"lo", lo}, {"hi", hi}};
            }
            if (fit->count("--t-col") || !params.contains("t_col"))
                params["t_col"] = fit_tcol;
            if (fit->count("--y-col") || !params.contains("y_col"))
                params["y_col"] = fit_ycol;
            finish("fit");
        } else if (*sweep_cmd) {
            if (params.empty())
                throw config_error("sweep requires --config with a scenario template");
            geovlasov::ScenarioConfig base = geovlasov::scenario_from_json(params, out_dir);
            if (app.count("--out"))
                base.out_dir = out_dir;
            if (app.count("--workers"))
                base.workers = workers;
            std::vector<json> values;
            std::stringstream ss(s_values);
            std::string item;
            while (std::getline(ss, item, ','))
                values.push_back(json::parse(item));
            const auto entries = geovlasov::sweep(base, s_axis, values, base.workers);
            int failures = 0;
            for (const auto& e : entries)
                if (e.status != "ok")
                    ++failures;
            std::cout << entries.size() - failures << "/" << entries.size()
                      << " sweep runs succeeded\n";
        }
    });
}

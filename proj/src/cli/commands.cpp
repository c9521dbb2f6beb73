#include "warptrend/cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "warptrend/basis.hpp"
#include "warptrend/cli/panel_io.hpp"
#include "warptrend/cli/svg_plot.hpp"
#include "warptrend/dpalign.hpp"
#include "warptrend/estimator.hpp"
#include "warptrend/inference.hpp"
#include "warptrend/kernels.hpp"
#include "warptrend/synthgen.hpp"

namespace warptrend::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kFewReplicates = 30;

void prepare_out(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw InputError(dir.string() + ": cannot create output directory");
}

void write_json(const fs::path& path, const ordered_json& j) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError(path.string() + ": cannot write file");
    file << j.dump(2) << '\n';
}

EstimatorConfig estimator_config(const RunConfig& cfg, int level) {
    EstimatorConfig e;
    e.basis = {cfg.basis, level};
    e.max_iter = cfg.max_iter;
    e.dp.lattice_size = cfg.lattice;
    try {
        e.validate();
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    return e;
}

ordered_json time_range_json(const Panel& p) {
    if (!p.time_range) return nullptr;
    return ordered_json::array({p.time_range->first, p.time_range->second});
}

std::vector<double> to_vector(const GridFunction& f) { return {f.values().begin(), f.values().end()}; }

Series line(const GridFunction& f, std::string color, std::string label = {}, bool dashed = false) {
    Series s;
    s.x.assign(f.grid().points().begin(), f.grid().points().end());
    s.y = to_vector(f);
    s.color = std::move(color);
    s.label = std::move(label);
    s.dashed = dashed;
    return s;
}

void plot_functions(const fs::path& path, const std::string& title, std::span<const GridFunction> fs_,
                    const std::string& ylabel) {
    std::vector<Series> series;
    for (std::size_t i = 0; i < fs_.size(); ++i) {
        Series s = line(fs_[i], palette_color(i));
        s.width = 1.0;
        series.push_back(std::move(s));
    }
    write_svg(path, {title, "t", ylabel}, series);
}

void plot_cost_trace(const fs::path& path, const DecompositionResult& r) {
    Series s;
    s.x.push_back(0);
    s.y.push_back(r.initial_cost);
    for (std::size_t k = 0; k < r.cost_trace.size(); ++k) {
        s.x.push_back(static_cast<double>(k + 1));
        s.y.push_back(r.cost_trace[k]);
    }
    PlotSpec spec{"negative log-likelihood", "iteration", "cost", true};
    write_svg(path, spec, {s});
}

std::vector<std::string> warp_names(const Panel& p) { return p.names; }

void write_decomposition(const fs::path& dir, const Panel& panel, const RunConfig& cfg, int level,
                         const DecompositionResult& r) {
    prepare_out(dir);
    const std::vector<std::string> hname{"h_hat"}, gname{"g_hat"};
    write_functions(dir / "h_hat.csv", hname, std::span(&r.h_hat, 1));
    write_functions(dir / "g_hat.csv", gname, std::span(&r.g_hat, 1));

    std::vector<GridFunction> warps;
    for (const Warping& w : r.warpings) warps.push_back(w.as_function());
    write_functions(dir / "warpings.csv", warp_names(panel), warps);

    std::vector<double> iters{0.0}, costs{r.initial_cost};
    for (std::size_t k = 0; k < r.cost_trace.size(); ++k) {
        iters.push_back(static_cast<double>(k + 1));
        costs.push_back(r.cost_trace[k]);
    }
    const std::vector<std::string> ch{"iteration", "cost"};
    const std::vector<std::vector<double>> cc{iters, costs};
    write_table(dir / "cost_trace.csv", ch, cc);

    const std::size_t m = panel.observations.front().size();
    ordered_json j;
    j["command"] = "decompose";
    j["model"] = "mle";
    j["basis"] = std::string(to_string(cfg.basis));
    j["l"] = level;
    j["n"] = panel.observations.size();
    j["m"] = m;
    j["lattice_size"] = DpConfig{cfg.lattice, coprime_neighborhood()}.resolved_lattice_size(m);
    j["sigma_hat"] = r.sigma_hat;
    j["final_cost"] = r.neg_log_likelihood;
    j["neg_log_likelihood"] = r.neg_log_likelihood;
    j["initial_cost"] = r.initial_cost;
    j["iterations"] = r.cost_trace.size();
    j["centering_converged"] = r.centering_converged;
    j["time_range"] = time_range_json(panel);
    j["observations"] = panel.names;
    write_json(dir / "summary.json", j);

    if (cfg.plots) {
        plot_functions(dir / "observations.svg", "observations", panel.observations, "f");
        write_svg(dir / "h_hat.svg", {"trend", "t", "h"}, {line(r.h_hat, "#d62728")});
        write_svg(dir / "g_hat.svg", {"seasonality", "t", "g"}, {line(r.g_hat, "#1f77b4")});
        plot_functions(dir / "warpings.svg", "warping functions", warps, "gamma");
        plot_cost_trace(dir / "cost_trace.svg", r);
    }
}

void write_separation(const fs::path& dir, const Panel& panel, const RunConfig& cfg, int level,
                      const SeparationResult& r) {
    prepare_out(dir);
    const std::vector<std::string> hname{"h_hat"}, gname{"g_hat"};
    write_functions(dir / "h_hat.csv", hname, std::span(&r.h_hat, 1));
    write_functions(dir / "g_hat.csv", gname, std::span(&r.g_hat, 1));
    ordered_json j;
    j["command"] = "decompose";
    j["model"] = "separation";
    j["basis"] = std::string(to_string(cfg.basis));
    j["l"] = level;
    j["n"] = panel.observations.size();
    j["m"] = panel.observations.front().size();
    j["final_cost"] = r.residual_cost;
    j["time_range"] = time_range_json(panel);
    j["observations"] = panel.names;
    write_json(dir / "summary.json", j);
    if (cfg.plots) {
        plot_functions(dir / "observations.svg", "observations", panel.observations, "f");
        write_svg(dir / "h_hat.svg", {"trend", "t", "h"}, {line(r.h_hat, "#d62728")});
        write_svg(dir / "g_hat.svg", {"seasonality", "t", "g"}, {line(r.g_hat, "#1f77b4")});
    }
}

OrthonormalBasis basis_for(const RunConfig& cfg, int level, const Grid& grid) {
    const BasisSpec spec{cfg.basis, level};
    try {
        spec.validate();
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    return build_orthonormal(spec, grid);
}

void write_band(const fs::path& path, const Band& b) {
    const std::vector<std::string> header{"t", "low", "mean", "high", "standard_error"};
    const auto pts = b.mean.grid().points();
    const std::vector<std::vector<double>> cols{{pts.begin(), pts.end()}, to_vector(b.low), to_vector(b.mean),
                                                to_vector(b.high), to_vector(b.standard_error)};
    write_table(path, header, cols);
}

void plot_band(const fs::path& path, const std::string& title, const Band& b, const GridFunction& est) {
    write_svg(path, {title, "t", ""},
              {line(b.low, "#7f7f7f", "band", true), line(b.high, "#7f7f7f", "", true),
               line(b.mean, "#1f77b4", "bootstrap mean"), line(est, "#d62728", "estimate")});
}

}  // namespace

void cmd_decompose(const fs::path& panel_path, const RunConfig& cfg, std::ostream& log) {
    const Panel panel = read_panel(panel_path);
    const int level = cfg.level();
    if (cfg.model == Model::Separation) {
        const OrthonormalBasis basis = basis_for(cfg, level, panel.observations.front().grid());
        const SeparationResult r = separation_model(panel.observations, basis);
        write_separation(cfg.out, panel, cfg, level, r);
        log << "separation model: residual cost " << format_number(r.residual_cost) << '\n';
        return;
    }
    const EstimatorConfig ecfg = estimator_config(cfg, level);
    const DecompositionResult r = decompose(panel.observations, ecfg);
    write_decomposition(cfg.out, panel, cfg, level, r);
    log << "final cost " << format_number(r.neg_log_likelihood) << " after " << r.cost_trace.size()
        << " iterations\n";
}

void cmd_select(const fs::path& panel_path, const RunConfig& cfg, std::ostream& log) {
    const Panel panel = read_panel(panel_path);
    const auto [first, last] = cfg.level_range();
    prepare_out(cfg.out);
    std::vector<double> levels, costs;
    ordered_json j;
    j["command"] = "select";
    j["model"] = cfg.model == Model::Mle ? "mle" : "separation";
    j["basis"] = std::string(to_string(cfg.basis));

    if (cfg.model == Model::Separation) {
        for (int l = first; l <= last; ++l) {
            const OrthonormalBasis basis = basis_for(cfg, l, panel.observations.front().grid());
            levels.push_back(l);
            costs.push_back(separation_model(panel.observations, basis).residual_cost);
        }
        const std::vector<std::string> header{"l", "residual_cost"};
        const std::vector<std::vector<double>> cols{levels, costs};
        write_table(cfg.out / "selection.csv", header, cols);
        j["levels"] = levels;
        j["costs"] = costs;
        j["selected_level"] = nullptr;
        j["note"] = "separation model: h + g is the cross-sectional mean for every level, so the cost "
                    "cannot discriminate between levels";
        write_json(cfg.out / "summary.json", j);
        log << "separation model: the residual cost is the same for every level; no level selected "
               "(the cost only varies with l once phase variability is modelled, use --model mle)\n";
        return;
    }

    EstimatorConfig ecfg = estimator_config(cfg, first);
    if (last > ecfg.basis.max_level)
        throw UsageError("l-range upper end " + std::to_string(last) + " exceeds " +
                         std::to_string(ecfg.basis.max_level));
    const SubspaceSelection sel = select_subspace(panel.observations, cfg.basis, first, last, ecfg);
    for (std::size_t k = 0; k < sel.levels.size(); ++k) {
        levels.push_back(sel.levels[k]);
        costs.push_back(sel.results[k].neg_log_likelihood);
        write_decomposition(cfg.out / ("l_" + std::to_string(sel.levels[k])), panel, cfg, sel.levels[k],
                            sel.results[k]);
        log << "l=" << sel.levels[k] << " cost " << format_number(costs.back()) << '\n';
    }
    const std::vector<std::string> header{"l", "neg_log_likelihood"};
    const std::vector<std::vector<double>> cols{levels, costs};
    write_table(cfg.out / "selection.csv", header, cols);
    j["levels"] = levels;
    j["costs"] = costs;
    j["selected_level"] = sel.selected_level;
    write_json(cfg.out / "summary.json", j);
    if (cfg.plots) {
        Series s;
        s.x = levels;
        s.y = costs;
        write_svg(cfg.out / "selection.svg", {"minimized negative log-likelihood", "l", "cost", true}, {s});
    }
    log << "selected l=" << sel.selected_level << '\n';
}

void cmd_bootstrap(const fs::path& panel_path, const RunConfig& cfg, std::ostream& log) {
    if (cfg.model != Model::Mle) throw UsageError("bootstrap supports only --model mle");
    const Panel panel = read_panel(panel_path);
    const int level = cfg.level();
    const EstimatorConfig ecfg = estimator_config(cfg, level);
    BootstrapConfig bcfg;
    bcfg.replicates = cfg.replicates;
    bcfg.alpha = cfg.alpha;
    bcfg.seed = cfg.seed;
    if (cfg.replicates < kFewReplicates)
        log << "warning: " << cfg.replicates << " replicates; bootstrap standard errors from fewer than "
            << kFewReplicates << " replicates are unreliable\n";

    const BootstrapSummary s = bootstrap(panel.observations, ecfg, bcfg);
    write_decomposition(cfg.out, panel, cfg, level, s.estimate);
    write_band(cfg.out / "h_band.csv", s.h);
    write_band(cfg.out / "g_band.csv", s.g);

    std::ofstream tests(cfg.out / "tests.csv", std::ios::binary);
    if (!tests) throw InputError((cfg.out / "tests.csv").string() + ": cannot write file");
    tests << "hypothesis,statistic,standard_error,p_value\n";
    for (const char* name : {"null", "constant", "linear"}) {
        const TestResult& t = s.tests.at(name);
        tests << name << ',' << format_number(t.statistic) << ',' << format_number(t.standard_error) << ','
              << format_number(t.p_value) << '\n';
        log << name << " trend: rho " << format_number(t.statistic) << " se " << format_number(t.standard_error)
            << " p " << format_number(t.p_value) << '\n';
    }
    tests.close();

    std::vector<double> idx, r0, rc, rl;
    for (std::size_t b = 0; b < s.h_replicates.size(); ++b) {
        idx.push_back(static_cast<double>(b));
        r0.push_back(stat_trend_null(s.h_replicates[b]));
        rc.push_back(stat_trend_constant(s.h_replicates[b]));
        rl.push_back(stat_trend_linear(s.h_replicates[b]));
    }
    const std::vector<std::string> rh{"replicate", "rho_null", "rho_constant", "rho_linear", "final_cost"};
    const std::vector<std::vector<double>> rcols{idx, r0, rc, rl, s.replicate_costs};
    write_table(cfg.out / "replicates.csv", rh, rcols);

    std::ofstream res(cfg.out / "resamples.csv", std::ios::binary);
    if (!res) throw InputError((cfg.out / "resamples.csv").string() + ": cannot write file");
    res << "replicate,indices\n";
    for (std::size_t b = 0; b < s.resamples.size(); ++b) {
        res << b << ',';
        for (std::size_t k = 0; k < s.resamples[b].size(); ++k) res << (k ? " " : "") << s.resamples[b][k];
        res << '\n';
    }
    res.close();

    ordered_json j;
    j["command"] = "bootstrap";
    j["basis"] = std::string(to_string(cfg.basis));
    j["l"] = level;
    j["replicates"] = cfg.replicates;
    j["alpha"] = cfg.alpha;
    j["critical_value"] = normal_critical_value(cfg.alpha);
    j["seed"] = cfg.seed;
    j["failed_attempts"] = s.failed_attempts;
    j["failed_replicates"] = s.failed_replicates;
    ordered_json t = ordered_json::object();
    for (const char* name : {"null", "constant", "linear"}) {
        const TestResult& r = s.tests.at(name);
        t[name] = {{"statistic", r.statistic}, {"standard_error", r.standard_error}, {"p_value", r.p_value}};
    }
    j["tests"] = t;
    j["estimate_cost"] = s.estimate.neg_log_likelihood;
    j["time_range"] = time_range_json(panel);
    write_json(cfg.out / "bootstrap.json", j);

    if (cfg.plots) {
        plot_band(cfg.out / "h_band.svg", "trend band", s.h, s.estimate.h_hat);
        plot_band(cfg.out / "g_band.svg", "seasonality band", s.g, s.estimate.g_hat);
    }
}

void cmd_simulate(const RunConfig& cfg, std::ostream& log) {
    ScenarioSpec spec{cfg.scenario, cfg.n, cfg.m, cfg.sigma, cfg.seed};
    try {
        spec.validate();
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    const SyntheticPanel p = generate(spec);
    prepare_out(cfg.out);
    std::vector<std::string> names;
    for (int i = 1; i <= spec.n; ++i) names.push_back("f" + std::to_string(i));
    write_functions(cfg.out / "panel.csv", names, p.observations);
    const std::vector<std::string> hname{"h"}, gname{"g"};
    write_functions(cfg.out / "truth_h.csv", hname, std::span(&p.h, 1));
    write_functions(cfg.out / "truth_g.csv", gname, std::span(&p.g, 1));
    std::vector<GridFunction> warps;
    for (const Warping& w : p.warpings) warps.push_back(w.as_function());
    write_functions(cfg.out / "truth_warpings.csv", names, warps);

    const BasisSpec b = designated_basis(spec.scenario);
    ordered_json j;
    j["command"] = "simulate";
    j["scenario"] = std::string(to_string(spec.scenario));
    j["n"] = spec.n;
    j["m"] = spec.m;
    j["sigma"] = spec.sigma;
    j["seed"] = spec.seed;
    j["basis"] = std::string(to_string(b.family));
    j["l"] = b.level;
    j["g_basis_coefficients"] = p.g_basis_coefficients;
    write_json(cfg.out / "summary.json", j);
    if (cfg.plots) {
        plot_functions(cfg.out / "observations.svg", "observations", p.observations, "f");
        plot_functions(cfg.out / "truth_warpings.svg", "warping functions", warps, "gamma");
    }
    log << "wrote " << spec.n << " observations of " << to_string(spec.scenario) << " to "
        << (cfg.out / "panel.csv").string() << '\n';
}

void cmd_align(const fs::path& pair_path, const RunConfig& cfg, std::ostream& log) {
    const Panel panel = read_panel(pair_path);
    if (panel.observations.size() != 2)
        throw InputError(pair_path.string() + ": align needs exactly two value columns (q, r), found " +
                         std::to_string(panel.observations.size()));
    DpConfig dp;
    dp.lattice_size = cfg.lattice;
    const AlignResult r = dp_align(panel.observations[0], panel.observations[1], dp);
    prepare_out(cfg.out);
    const GridFunction gamma = r.warping.as_function();
    const std::vector<std::string> name{"gamma"};
    write_functions(cfg.out / "warping.csv", name, std::span(&gamma, 1));
    const GridFunction aligned = action(panel.observations[1], r.warping);
    const GridFunction resid = panel.observations[0] - aligned;
    ordered_json j;
    j["command"] = "align";
    j["lattice_size"] = dp.resolved_lattice_size(gamma.size());
    j["cost"] = r.cost;
    j["l2_residual"] = inner_product(resid, resid);
    j["path_nodes"] = r.path.size();
    j["columns"] = panel.names;
    write_json(cfg.out / "summary.json", j);
    if (cfg.plots)
        write_svg(cfg.out / "alignment.svg", {"alignment", "t", ""},
                  {line(panel.observations[0], "#333333", panel.names[0]),
                   line(panel.observations[1], "#7f7f7f", panel.names[1], true),
                   line(aligned, "#d62728", "aligned")});
    log << "alignment cost " << format_number(r.cost) << '\n';
}

void cmd_fluctuation(const fs::path& rates_path, const RunConfig& cfg, std::ostream& log) {
    const Table table = read_table(rates_path);
    std::size_t first = 0;
    std::string h0 = table.header.empty() ? "" : table.header[0];
    std::transform(h0.begin(), h0.end(), h0.begin(), [](unsigned char c) { return std::tolower(c); });
    if (h0 == "t" || h0 == "time") first = 1;
    if (table.columns.size() - first != 1)
        throw InputError(rates_path.string() + ": expected one rate column, found " +
                         std::to_string(table.columns.size() - first));
    const std::vector<double>& rates = table.columns[first];
    std::vector<double> tau;
    try {
        tau = fluctuation(rates);
    } catch (const std::invalid_argument& ex) {
        throw InputError(rates_path.string() + ": " + ex.what());
    }
    prepare_out(cfg.out);
    std::vector<double> key;
    for (std::size_t k = 0; k < tau.size(); ++k)
        key.push_back(first ? table.columns[0][k + 1] : static_cast<double>(k + 1));
    const std::vector<std::string> header{first ? table.header[0] : "k", "tau"};
    const std::vector<std::vector<double>> cols{key, tau};
    write_table(cfg.out / "fluctuation.csv", header, cols);
    log << "wrote " << tau.size() << " fluctuation values\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trend and phase-varying seasonality estimation for functional panels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "warptrend 1.0.0");

    std::vector<std::pair<std::string, std::string>> given;
    std::string config_path;
    std::string input;

    auto add_key = [&](CLI::App* sub, const std::string& key, const std::string& help) {
        sub->add_option_function<std::string>(
            "--" + key, [&given, key](const std::string& v) { given.emplace_back(key, v); }, help);
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value configuration file (flags override it)");
        add_key(sub, "out", "output directory");
        sub->add_flag_callback("--plots", [&given] { given.emplace_back("plots", "true"); }, "write SVG plots");
    };
    auto add_fit = [&](CLI::App* sub) {
        add_key(sub, "basis", "basis family: fourier, sine, cosine, legendre");
        add_key(sub, "l", "number of basis elements spanning the trend space");
        add_key(sub, "l-range", "level range A..B");
        add_key(sub, "max-iter", "coordinate-descent iterations");
        add_key(sub, "lattice", "alignment lattice size (0 = automatic)");
        add_key(sub, "model", "mle or separation");
    };

    CLI::App* dec = app.add_subcommand("decompose", "estimate trend, seasonality and warpings");
    dec->add_option("panel", input, "panel CSV")->required();
    add_common(dec);
    add_fit(dec);

    CLI::App* sel = app.add_subcommand("select", "choose the trend subspace by minimized cost");
    sel->add_option("panel", input, "panel CSV")->required();
    add_common(sel);
    add_fit(sel);

    CLI::App* boot = app.add_subcommand("bootstrap", "bootstrap bands and trend-shape tests");
    boot->add_option("panel", input, "panel CSV")->required();
    add_common(boot);
    add_fit(boot);
    add_key(boot, "replicates", "bootstrap replicates B");
    add_key(boot, "alpha", "band level alpha");
    add_key(boot, "seed", "resampling seed");

    CLI::App* sim = app.add_subcommand("simulate", "generate a synthetic panel with its truth");
    add_common(sim);
    add_key(sim, "scenario", "fig1, subspace_selection or noise_perturbation");
    add_key(sim, "n", "number of observations");
    add_key(sim, "m", "samples per observation");
    add_key(sim, "sigma", "noise standard deviation");
    add_key(sim, "seed", "noise seed");

    CLI::App* al = app.add_subcommand("align", "align the first value column to the second");
    al->add_option("pair", input, "CSV with columns q, r (optional leading time column)")->required();
    add_common(al);
    add_key(al, "lattice", "alignment lattice size (0 = automatic)");

    CLI::App* fl = app.add_subcommand("fluctuation", "percent change between consecutive rates");
    fl->add_option("rates", input, "CSV with one rate column (optional leading time column)")->required();
    add_common(fl);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) apply_config_file(cfg, config_path);
        for (const auto& [key, value] : given) set_key(cfg, key, value);

        if (dec->parsed()) cmd_decompose(input, cfg, out);
        else if (sel->parsed()) cmd_select(input, cfg, out);
        else if (boot->parsed()) cmd_bootstrap(input, cfg, out);
        else if (sim->parsed()) cmd_simulate(cfg, out);
        else if (al->parsed()) cmd_align(input, cfg, out);
        else if (fl->parsed()) cmd_fluctuation(input, cfg, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const EstimationError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const BootstrapFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const RankDeficientBasis& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace warptrend::cli

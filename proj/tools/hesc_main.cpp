#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hesc/averaged.hpp"
#include "hesc/baseline.hpp"
#include "hesc/errors.hpp"
#include "hesc/escape2d.hpp"
#include "hesc/figures.hpp"
#include "hesc/model.hpp"
#include "hesc/oracle.hpp"
#include "hesc/series.hpp"

namespace {

struct ModelFlags {
    double alpha = 0.045;
    double m = 0.093;
    std::optional<double> theta;
    std::optional<double> k;
};

hesc::ModelParams resolve_params(const ModelFlags& mf, double m_factor = 1.0) {
    if (mf.theta && mf.k) {
        throw hesc::DomainError("theta", "give either --theta or --k, not both");
    }
    if (mf.k) return hesc::make_params(mf.alpha, mf.m * m_factor, *mf.k);
    return hesc::params_from_theta(mf.alpha, mf.m * m_factor, mf.theta.value_or(1.25));
}

void add_model_flags(CLI::App* cmd, ModelFlags& mf) {
    cmd->add_option("--alpha", mf.alpha, "variance mean-reversion rate, 1/day")
        ->capture_default_str();
    cmd->add_option("--m", mf.m, "typical daily volatility")->capture_default_str();
    cmd->add_option("--theta", mf.theta, "dimensionless variance level (default 1.25)");
    cmd->add_option("--k", mf.k, "variance noise amplitude (alternative to --theta)");
}

struct SeriesFlags {
    std::optional<double> rel_tol;
    std::optional<int> modes;
};

void add_series_flags(CLI::App* cmd, SeriesFlags& sf) {
    cmd->add_option("--rel-tol", sf.rel_tol, "series relative tolerance");
    cmd->add_option("--modes", sf.modes, "maximum number of series modes");
}

hesc::SeriesControl apply_series_flags(hesc::SeriesControl ctrl, const SeriesFlags& sf) {
    if (sf.rel_tol) ctrl.rel_tol = *sf.rel_tol;
    if (sf.modes) ctrl.max_modes = *sf.modes;
    return ctrl;
}

void print_value(double v) { std::printf("%.16e\n", v); }

int run_eval(const std::string& quantity, const ModelFlags& mf, const SeriesFlags& sf,
             double x, double v, double tau, double t, double L) {
    using namespace hesc;
    if (quantity == "sp-wiener" || quantity == "met-wiener") {
        WienerParams wp{mf.m, L};
        SeriesControl ctrl = apply_series_flags(SeriesControl{}, sf);
        print_value(quantity == "sp-wiener" ? survival_wiener(x, t, wp, ctrl)
                                            : met_wiener(x, wp));
        return 0;
    }
    ModelParams p = resolve_params(mf);
    if (quantity == "p-stat") {
        print_value(stationary_density(v, p.theta));
        return 0;
    }
    SeriesControl base = (quantity == "met2d" || quantity == "met-return")
                             ? met_series_control()
                             : SeriesControl{};
    SeriesControl ctrl = apply_series_flags(base, sf);
    if (quantity == "sp2d") {
        print_value(survival_2d(x, v, tau, L, p, ctrl));
    } else if (quantity == "f2d") {
        print_value(escape_density(x, v, tau, L, p, ctrl));
    } else if (quantity == "met2d") {
        print_value(met_2d(x, v, L, p, ctrl));
    } else if (quantity == "sp-return") {
        print_value(survival_return(x, tau, L, p, ctrl));
    } else if (quantity == "met-return") {
        print_value(met_return(x, L, p, ctrl));
    } else {
        throw DomainError("quantity", "unknown quantity: " + quantity);
    }
    return 0;
}

int run_mc_check(const std::string& quantity, const ModelFlags& mf, double x, double v,
                 double tau, double L, const hesc::McConfig& cfg, double tol_sigma,
                 double bias_rel, double perturb_m) {
    using namespace hesc;
    ModelParams p_mc = resolve_params(mf);
    ModelParams p_closed = resolve_params(mf, perturb_m);

    double closed = 0.0;
    McEstimate est;
    McConfig local = cfg;
    if (quantity == "sp2d") {
        local.v0_mode = V0Mode::fixed;
        local.v0 = v;
        closed = survival_2d(x, v, tau, L, p_closed);
        est = mc_survival(x, tau, L, p_mc, local);
    } else if (quantity == "met2d") {
        local.v0_mode = V0Mode::fixed;
        local.v0 = v;
        closed = met_2d(x, v, L, p_closed);
        est = mc_met(x, L, p_mc, local);
    } else if (quantity == "sp-return") {
        local.v0_mode = V0Mode::gamma_stationary;
        closed = survival_return(x, tau, L, p_closed);
        est = mc_survival(x, tau, L, p_mc, local);
    } else if (quantity == "met-return") {
        local.v0_mode = V0Mode::gamma_stationary;
        closed = met_return(x, L, p_closed);
        est = mc_met(x, L, p_mc, local);
    } else {
        throw DomainError("quantity", "unknown mc-check quantity: " + quantity);
    }

    double diff = std::abs(est.mean - closed);
    double allowance = tol_sigma * est.std_error + bias_rel * std::abs(closed);
    bool pass = diff <= allowance;
    std::printf("closed_form = %.16e\n", closed);
    std::printf("mc_mean = %.16e\n", est.mean);
    std::printf("mc_std_error = %.16e\n", est.std_error);
    std::printf("censored_fraction = %.6f\n", est.censored_fraction);
    std::printf("biased_low = %d\n", est.biased_low ? 1 : 0);
    std::printf("abs_diff = %.16e\n", diff);
    std::printf("allowance = %.16e\n", allowance);
    std::printf("verdict = %s\n", pass ? "PASS" : "FAIL");
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Escape statistics for a mean-reverting stochastic-volatility model: "
        "survival probabilities and mean escape times between absorbing "
        "barriers, with a Monte-Carlo cross-check.  Mean escape times are "
        "reported in days; tau and v are the scaled time and variance.  The "
        "HESC_THREADS environment variable caps simulation worker threads."};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file; flags take precedence");

    int rc = 0;

    // ---- eval ----
    auto* eval = app.add_subcommand("eval", "evaluate one closed-form quantity");
    static const std::vector<std::string> kQuantities{
        "sp2d", "f2d", "met2d", "sp-return", "met-return",
        "sp-wiener", "met-wiener", "p-stat"};
    std::string ev_quantity;
    ModelFlags ev_model;
    SeriesFlags ev_series;
    double ev_x = 0.0, ev_v = 1.25, ev_tau = 0.1, ev_t = 0.1, ev_L = 0.1;
    eval->add_option("--quantity", ev_quantity, "one of sp2d, f2d, met2d, sp-return, met-return, sp-wiener, met-wiener, p-stat")
        ->required()
        ->check(CLI::IsMember(kQuantities));
    add_model_flags(eval, ev_model);
    add_series_flags(eval, ev_series);
    eval->add_option("--x", ev_x, "start return")->capture_default_str();
    eval->add_option("--v", ev_v, "scaled variance")->capture_default_str();
    eval->add_option("--tau", ev_tau, "scaled time")->capture_default_str();
    eval->add_option("--t", ev_t, "time in days (constant-volatility quantities)")
        ->capture_default_str();
    eval->add_option("--L", ev_L, "barrier span")->capture_default_str();
    eval->callback([&] {
        rc = run_eval(ev_quantity, ev_model, ev_series, ev_x, ev_v, ev_tau, ev_t, ev_L);
    });

    // ---- figure ----
    auto* figure = app.add_subcommand("figure", "emit a reference figure data set as CSV");
    std::string fg_id;
    std::string fg_out;
    bool fg_list = false;
    hesc::FigureRequest fg_req;
    figure->add_flag("--list", fg_list, "list figure ids and exit");
    figure->add_option("--id", fg_id, "figure id (see --list)");
    figure->add_option("--out", fg_out, "output CSV path (default stdout)");
    figure->add_option("--alpha", fg_req.alpha, "")->capture_default_str();
    figure->add_option("--m", fg_req.m, "")->capture_default_str();
    figure->add_option("--theta", fg_req.theta, "")->capture_default_str();
    figure->add_option("--L", fg_req.L, "")->capture_default_str();
    figure->callback([&] {
        if (fg_list) {
            for (const std::string& id : hesc::figure_ids()) std::printf("%s\n", id.c_str());
            return;
        }
        if (fg_id.empty()) {
            throw hesc::DomainError("figure", "either --id or --list is required");
        }
        fg_req.id = fg_id;
        if (fg_out.empty()) {
            hesc::write_figure_csv(std::cout, fg_req);
        } else {
            std::ofstream os(fg_out);
            if (!os) throw hesc::DomainError("out", "cannot open output file: " + fg_out);
            hesc::write_figure_csv(os, fg_req);
        }
    });

    // ---- mc-check ----
    auto* mc = app.add_subcommand(
        "mc-check", "compare a closed form against the Monte-Carlo simulation");
    static const std::vector<std::string> kMcQuantities{"sp2d", "met2d", "sp-return",
                                                        "met-return"};
    std::string mc_quantity;
    ModelFlags mc_model;
    double mc_x = 0.0, mc_v = 1.25, mc_tau = 0.1, mc_L = 0.1;
    double mc_tol_sigma = 4.0, mc_bias_rel = 0.02, mc_perturb_m = 1.0;
    hesc::McConfig mc_cfg;
    mc->add_option("--quantity", mc_quantity, "one of sp2d, met2d, sp-return, met-return")
        ->required()
        ->check(CLI::IsMember(kMcQuantities));
    add_model_flags(mc, mc_model);
    mc->add_option("--x", mc_x, "start return")->capture_default_str();
    mc->add_option("--v", mc_v, "initial scaled variance (sp2d/met2d)")
        ->capture_default_str();
    mc->add_option("--tau", mc_tau, "scaled evaluation time (survival checks)")
        ->capture_default_str();
    mc->add_option("--L", mc_L, "barrier span")->capture_default_str();
    mc->add_option("--paths", mc_cfg.n_paths, "number of simulated paths")
        ->capture_default_str();
    mc->add_option("--dt", mc_cfg.dt, "scaled time step")->capture_default_str();
    mc->add_option("--horizon", mc_cfg.horizon, "scaled horizon (mean-escape checks)")
        ->capture_default_str();
    mc->add_option("--seed", mc_cfg.seed, "simulation seed")->capture_default_str();
    mc->add_option("--tol-sigma", mc_tol_sigma, "statistical allowance in std errors")
        ->capture_default_str();
    mc->add_option("--bias-rel", mc_bias_rel,
                   "relative allowance for discretization bias")
        ->capture_default_str();
    mc->add_option("--perturb-m", mc_perturb_m,
                   "scale m in the closed form only (negative control)")
        ->capture_default_str();
    mc->callback([&] {
        rc = run_mc_check(mc_quantity, mc_model, mc_x, mc_v, mc_tau, mc_L, mc_cfg,
                          mc_tol_sigma, mc_bias_rel, mc_perturb_m);
    });

    // ---- sweep-L ----
    auto* sweep = app.add_subcommand(
        "sweep-L", "narrow-span scaling diagnostic for the averaged mean escape time");
    ModelFlags sw_model;
    SeriesFlags sw_series;
    double sw_xfrac = 0.0, sw_lmin = 1e-4, sw_lmax = 1e-2;
    int sw_count = 9;
    std::string sw_out;
    add_model_flags(sweep, sw_model);
    add_series_flags(sweep, sw_series);
    sweep->add_option("--x-frac", sw_xfrac, "start return as a fraction of L")
        ->capture_default_str();
    sweep->add_option("--L-min", sw_lmin, "smallest span")->capture_default_str();
    sweep->add_option("--L-max", sw_lmax, "largest span")->capture_default_str();
    sweep->add_option("--count", sw_count, "number of spans (geometric)")
        ->capture_default_str();
    sweep->add_option("--out", sw_out, "optional CSV of (L, met_days, small_span_days)");
    sweep->callback([&] {
        using namespace hesc;
        if (sw_count < 2) throw DomainError("count", "--count must be >= 2");
        if (!(sw_lmin > 0.0) || !(sw_lmax > sw_lmin)) {
            throw DomainError("L", "need 0 < --L-min < --L-max");
        }
        ModelParams p = resolve_params(sw_model);
        SeriesControl ctrl = apply_series_flags(met_series_control(), sw_series);
        std::vector<double> spans(sw_count);
        for (int i = 0; i < sw_count; ++i) {
            spans[i] = std::exp(std::log(sw_lmin) +
                                (std::log(sw_lmax) - std::log(sw_lmin)) * i /
                                    (sw_count - 1));
        }
        SpanScalingReport rep = met_return_span_scaling(sw_xfrac, spans, p, ctrl);
        const char* regime = rep.theta_regime == ThetaRegime::below_one ? "below_one"
                             : rep.theta_regime == ThetaRegime::equal_one
                                 ? "equal_one"
                                 : "above_one";
        std::printf("theta_regime = %s\n", regime);
        std::printf("fitted_exponent = %.16e\n", rep.fitted_exponent);
        std::printf("prefactor = %.16e\n", rep.prefactor);
        std::printf("fit_L_min = %.16e\n", rep.fit_range.first);
        std::printf("fit_L_max = %.16e\n", rep.fit_range.second);
        std::printf("outer_rel_gap = %.16e\n", rep.outer_rel_gap);
        if (!sw_out.empty()) {
            std::ofstream os(sw_out);
            if (!os) throw DomainError("out", "cannot open output file: " + sw_out);
            os << "L,met_days,small_span_days\n";
            char buf[128];
            for (double L : spans) {
                std::snprintf(buf, sizeof(buf), "%.16e,%.16e,%.16e", L,
                              met_return(sw_xfrac * L, L, p, ctrl),
                              met_return_small_span(sw_xfrac * L, L, p, ctrl));
                os << buf << '\n';
            }
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const hesc::DomainError& e) {
        std::fprintf(stderr, "error: %s: %s\n", e.field().c_str(), e.what());
        return 2;
    } catch (const hesc::ConvergenceError& e) {
        std::fprintf(stderr, "error: convergence: %s (modes_used=%d)\n", e.what(),
                     e.modes_used());
        return 3;
    }
    return rc;
}

#include "hesc/figures.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>

#include "hesc/averaged.hpp"
#include "hesc/baseline.hpp"
#include "hesc/errors.hpp"
#include "hesc/escape2d.hpp"
#include "hesc/model.hpp"

namespace hesc {

namespace {

void put(std::ostream& os, double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", value);
    os << buf;
}

void row(std::ostream& os, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) os << ',';
        put(os, v);
        first = false;
    }
    os << '\n';
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * i / (n - 1);
    return g;
}

std::vector<double> geomspace(double lo, double hi, int n) {
    std::vector<double> g(n);
    double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    return g;
}

void fig_sp_surface(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    os << "x,tau,survival\n";
    for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 41)) {
        for (double tau : geomspace(1e-3, 1.0, 30)) {
            row(os, {x, tau, survival_2d(x, p.theta, tau, req.L, p)});
        }
    }
}

void fig_sp_vs_v(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    os << "tau,v,survival\n";
    for (double tau : {0.01, 0.05, 0.1}) {
        for (double v : linspace(0.0, 5.0, 41)) {
            row(os, {tau, v, survival_2d(0.0, v, tau, req.L, p)});
        }
    }
}

void fig_met_surface(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    // The v = 0 edge decays only like n^-2 and the near-boundary columns
    // shrink the cosine factor, so that row goes through the hypergeometric
    // closed form with a widened mode budget.
    SeriesControl zero_vol{1e-8, 200000, 3};
    os << "x,v,met_days\n";
    for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 21)) {
        for (double v : linspace(0.0, 5.0, 21)) {
            double met = (v == 0.0) ? met_2d_zero_vol(x, req.L, p, zero_vol)
                                    : met_2d(x, v, req.L, p);
            row(os, {x, v, met});
        }
    }
}

void fig_met_vs_x(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    os << "v,x,met_days\n";
    for (double v : {0.5 * p.theta, p.theta, 2.0 * p.theta}) {
        for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 41)) {
            row(os, {v, x, met_2d(x, v, req.L, p)});
        }
    }
}

void fig_met_vs_v(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    os << "v,met_days,high_vol_limit\n";
    for (double v : geomspace(0.1, 100.0, 61)) {
        row(os, {v, met_2d(0.0, v, req.L, p), met_2d_large_vol(0.0, v, req.L, p)});
    }
}

void fig_sp_return_surface(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    os << "x,tau,survival\n";
    for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 41)) {
        for (double tau : geomspace(1e-3, 1.0, 30)) {
            row(os, {x, tau, survival_return(x, tau, req.L, p)});
        }
    }
}

void fig_sp_return_vs_tau(std::ostream& os, const FigureRequest& req) {
    ModelParams p = params_from_theta(req.alpha, req.m, req.theta);
    // Averaged mode weights decay polynomially, so the smallest tau values
    // need a few thousand modes rather than the default budget.
    SeriesControl ctrl{1e-9, 200000, 3};
    os << "tau,survival,short_time,long_time\n";
    for (double tau : geomspace(1e-4, 5.0, 60)) {
        row(os, {tau, survival_return(0.0, tau, req.L, p, ctrl),
                 survival_return_shorttime(0.0, tau, req.L, p, ctrl),
                 survival_return_longtime(0.0, tau, req.L, p, ctrl)});
    }
}

void fig_met_return_vs_x(std::ostream& os, const FigureRequest& req) {
    os << "theta,x,met_days\n";
    for (double theta : {0.5, 1.0, 1.25}) {
        ModelParams p = params_from_theta(req.alpha, req.m, theta);
        for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 41)) {
            row(os, {theta, x, met_return(x, req.L, p)});
        }
    }
}

void fig_met_vs_span(std::ostream& os, const FigureRequest& req, double theta) {
    ModelParams p = params_from_theta(req.alpha, req.m, theta);
    os << "L,met_days,small_span_days\n";
    for (double L : geomspace(1e-4, 1.0, 25)) {
        row(os, {L, met_return(0.0, L, p), met_return_small_span(0.0, L, p)});
    }
}

void fig_sp_vs_x_wiener(std::ostream& os, const FigureRequest& req) {
    WienerParams wp{req.m, req.L};
    os << "t_days,x,survival\n";
    for (double t : {0.05, 0.2, 0.5}) {
        for (double x : linspace(-0.5 * req.L, 0.5 * req.L, 41)) {
            row(os, {t, x, survival_wiener(x, t, wp)});
        }
    }
}

void fig_sp_vs_tau_wiener(std::ostream& os, const FigureRequest& req) {
    WienerParams wp{req.m, req.L};
    os << "t_days,survival\n";
    for (double t : geomspace(1e-3, 2.0, 60)) {
        row(os, {t, survival_wiener(0.0, t, wp)});
    }
}

using FigureFn = std::function<void(std::ostream&, const FigureRequest&)>;

const std::vector<std::pair<std::string, FigureFn>>& registry() {
    static const std::vector<std::pair<std::string, FigureFn>> fns = {
        {"sp_surface", fig_sp_surface},
        {"sp_vs_v", fig_sp_vs_v},
        {"met_surface", fig_met_surface},
        {"met_vs_x", fig_met_vs_x},
        {"met_vs_v", fig_met_vs_v},
        {"sp_return_surface", fig_sp_return_surface},
        {"sp_return_vs_tau", fig_sp_return_vs_tau},
        {"met_return_vs_x", fig_met_return_vs_x},
        {"met_vs_L_small_theta",
         [](std::ostream& os, const FigureRequest& r) { fig_met_vs_span(os, r, 0.5); }},
        {"met_vs_L_large_theta",
         [](std::ostream& os, const FigureRequest& r) { fig_met_vs_span(os, r, 1.25); }},
        {"sp_vs_x_wiener", fig_sp_vs_x_wiener},
        {"sp_vs_tau_wiener", fig_sp_vs_tau_wiener},
    };
    return fns;
}

}  // namespace

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const auto& [id, fn] : registry()) v.push_back(id);
        return v;
    }();
    return ids;
}

void write_figure_csv(std::ostream& os, const FigureRequest& req) {
    for (const auto& [id, fn] : registry()) {
        if (id == req.id) {
            fn(os, req);
            return;
        }
    }
    throw DomainError("figure", "unknown figure id: " + req.id);
}

}  // namespace hesc

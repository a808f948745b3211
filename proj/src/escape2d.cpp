#include "hesc/escape2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "hesc/errors.hpp"
#include "hesc/modal.hpp"
#include "hesc/quadrature.hpp"
#include "hesc/specfun.hpp"

namespace hesc {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_point(double x, double v, double L) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
    if (!(std::abs(x) <= 0.5 * L)) {
        throw DomainError("x", "start point must satisfy |x| <= L/2");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("v", "scaled variance v must be non-negative and finite");
    }
}

bool on_absorbing_boundary(double x, double L) { return std::abs(x) == 0.5 * L; }

// Scaled mean-escape-time coefficient of one mode (gamma_n excluded):
//   T_n(v) = Delta^(theta-1) / mu+^theta *
//            Int_0^1 xi^(s-1) (1+(mu-/mu+) xi)^(-theta)
//                    exp(-mu- v (1-xi)/(1+(mu-/mu+) xi)) dxi,   s = theta mu-/Delta.
// The substitution xi = u^(1/s) absorbs the xi^(s-1) endpoint weight exactly;
// at large mu- v the exponential concentrates in a ~1/(mu- v p) strip below
// u = 1, which is seeded with geometric breakpoints.
double met_mode_integral(const ModeCoefficients& mc, double theta, double v,
                         double abs_term_tol) {
    const double lam = mc.mu_minus / mc.mu_plus;
    const double p = mc.delta_n / (theta * mc.mu_minus);  // = 1/s
    auto integrand = [&](double u) {
        double xi = std::pow(u, p);
        double den = 1.0 + lam * xi;
        return std::pow(den, -theta) * std::exp(-mc.mu_minus * v * (1.0 - xi) / den);
    };
    std::vector<double> pts{0.0};
    const double q = mc.mu_minus * v * p;
    if (q > 20.0) {
        std::vector<double> upper;
        for (double w = 1.0 / q; w < 0.5; w *= 8.0) upper.push_back(1.0 - w);
        pts.insert(pts.end(), upper.rbegin(), upper.rend());
    }
    pts.push_back(1.0);
    double pref = std::pow(mc.delta_n, theta - 1.0) / std::pow(mc.mu_plus, theta);
    // rel 1e-11 rather than tighter: at large mu- v the Kronrod error estimate
    // stalls near rel 1e-12 (evaluation noise in the concentrated strip).  The
    // absolute floor, set by the caller from the leading term, keeps deep
    // modes from chasing relative accuracy far below the series tolerance.
    QuadControl qc{1e-11, abs_term_tol / (pref * p), 2000};
    QuadResult r = integrate_segmented(integrand, pts, qc);
    if (!r.converged) {
        throw ConvergenceError("mean-escape-time mode integral did not converge",
                               r.evaluations, r.error_estimate);
    }
    return pref * p * r.value;
}

}  // namespace

SeriesEval survival_2d_info(double x, double v, double tau, double L,
                            const ModelParams& p, const SeriesControl& ctrl) {
    validate_point(x, v, L);
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "scaled time tau must be non-negative and finite");
    }
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    if (tau == 0.0) return SeriesEval{1.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double a = riccati_A(mc, p.theta, tau);
        double b = riccati_B(mc, tau);
        return mc.gamma_n * std::exp(-a - b * v);
    });
    s.value = std::clamp(s.value, 0.0, 1.0);
    return s;
}

double survival_2d(double x, double v, double tau, double L, const ModelParams& p,
                   const SeriesControl& ctrl) {
    return survival_2d_info(x, v, tau, L, p, ctrl).value;
}

double survival_2d_shorttime(double x, double v, double tau, double L,
                             const ModelParams& p, const SeriesControl& ctrl) {
    validate_point(x, v, L);
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "short-time expansion requires tau > 0");
    }
    if (on_absorbing_boundary(x, L)) return 0.0;
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    return sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double hold = 1.0 - mc.mu_minus * tau;
        if (!(hold > 0.0)) {
            throw DomainError("tau",
                              "short-time expansion invalid: mu-_n tau >= 1 before "
                              "the mode series converged");
        }
        double rate = p.theta * mc.mu_minus + mc.mu_plus * mc.mu_minus * v / hold;
        return mc.gamma_n * std::pow(hold, -p.theta) * std::exp(-rate * tau);
    }).value;
}

double survival_2d_longtime(double x, double v, double tau, double L,
                            const ModelParams& p, const SeriesControl& ctrl) {
    validate_point(x, v, L);
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "scaled time tau must be non-negative and finite");
    }
    if (on_absorbing_boundary(x, L)) return 0.0;
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    return sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        return mc.gamma_n * std::exp(-mc.mu_minus * (p.theta * tau + v));
    }).value;
}

SeriesEval escape_density_info(double x, double v, double tau, double L,
                               const ModelParams& p, const SeriesControl& ctrl) {
    validate_point(x, v, L);
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "escape density requires tau > 0");
    }
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    return sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double a = riccati_A(mc, p.theta, tau);
        double b = riccati_B(mc, tau);
        RiccatiRates rates = riccati_rates(mc, p.theta, tau);
        return mc.gamma_n * (rates.dA + rates.dB * v) * std::exp(-a - b * v);
    });
}

double escape_density(double x, double v, double tau, double L, const ModelParams& p,
                      const SeriesControl& ctrl) {
    return escape_density_info(x, v, tau, L, p, ctrl).value;
}

SeriesEval met_2d_info(double x, double v, double L, const ModelParams& p,
                       const SeriesControl& ctrl) {
    validate_point(x, v, L);
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    double lead_term = 0.0;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double term = mc.gamma_n * met_mode_integral(mc, p.theta, v,
                                                     1e-13 * lead_term);
        if (n == 0) lead_term = std::abs(term);
        return term;
    });
    s.value /= p.alpha;  // scaled time -> days
    s.truncation_estimate /= p.alpha;
    return s;
}

double met_2d(double x, double v, double L, const ModelParams& p,
              const SeriesControl& ctrl) {
    return met_2d_info(x, v, L, p, ctrl).value;
}

SeriesEval met_2d_zero_vol_info(double x, double L, const ModelParams& p,
                                const SeriesControl& ctrl) {
    validate_point(x, 0.0, L);
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double sp = p.theta * mc.mu_minus / mc.delta_n;
        double hyp = gauss_2f1(p.theta, sp, 1.0 + sp, -mc.mu_minus / mc.mu_plus);
        return mc.gamma_n / (p.theta * mc.mu_minus) *
               std::pow(mc.delta_n / mc.mu_plus, p.theta) * hyp;
    });
    s.value /= p.alpha;
    s.truncation_estimate /= p.alpha;
    return s;
}

double met_2d_zero_vol(double x, double L, const ModelParams& p,
                       const SeriesControl& ctrl) {
    return met_2d_zero_vol_info(x, L, p, ctrl).value;
}

double met_2d_large_vol(double x, double v, double L, const ModelParams& p) {
    validate_point(x, v, L);
    if (!(v > 0.0)) throw DomainError("v", "high-volatility limit requires v > 0");
    return 2.0 * p.alpha / (p.k * p.k * v) * (0.25 * L * L - x * x);
}

}  // namespace hesc

#include "hesc/averaged.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hesc/errors.hpp"
#include "hesc/modal.hpp"
#include "hesc/quadrature.hpp"
#include "hesc/specfun.hpp"

namespace hesc {

namespace {

constexpr double kPi = std::numbers::pi;

void validate_span_point(double x, double L) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
    if (!(std::abs(x) <= 0.5 * L)) {
        throw DomainError("x", "start point must satisfy |x| <= L/2");
    }
}

bool on_absorbing_boundary(double x, double L) { return std::abs(x) == 0.5 * L; }

// Variance-averaged survival weight of one mode:
//   C_n(tau) = (Delta e^(-mu- tau) / (mu+^2 - mu-^2 e^(-Delta tau)))^theta,
// computed through expm1/log1p using mu+^2 - mu-^2 = Delta so it neither
// cancels at small tau nor overflows at large tau.
double averaged_mode_weight(const ModeCoefficients& mc, double theta, double tau) {
    double growth = std::log1p(mc.mu_minus * mc.mu_minus / mc.delta_n *
                               (-std::expm1(-mc.delta_n * tau)));
    return std::exp(theta * (-mc.mu_minus * tau - growth));
}

}  // namespace

double stationary_density(double v, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("theta", "stationary_density requires theta > 0");
    }
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError("v", "stationary_density requires v >= 0");
    }
    if (v == 0.0) {
        if (theta < 1.0) return std::numeric_limits<double>::infinity();
        if (theta == 1.0) return 1.0;
        return 0.0;
    }
    return std::exp((theta - 1.0) * std::log(v) - v - ln_gamma(theta));
}

double gamma_average(const std::function<double(double)>& f, double theta,
                     double rel_tol) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("theta", "gamma_average requires theta > 0");
    }
    const QuadControl ctrl{rel_tol, 0.0, 2000};
    const double inv_gamma = std::exp(-ln_gamma(theta));
    // [0,1]: w = v^theta makes the weight flat: dw = theta v^(theta-1) dv.
    QuadResult head = integrate(
        [&](double w) {
            double v = std::pow(w, 1.0 / theta);
            return f(v) * std::exp(-v);
        },
        0.0, 1.0, ctrl);
    // [1,inf): u = e^(-v) compactifies the tail.
    QuadResult tail = integrate(
        [&](double u) {
            double v = -std::log(u);
            return f(v) * std::pow(v, theta - 1.0);
        },
        0.0, std::exp(-1.0), ctrl);
    if (!head.converged || !tail.converged) {
        throw ConvergenceError("stationary-average quadrature did not converge",
                               head.evaluations + tail.evaluations,
                               head.error_estimate + tail.error_estimate);
    }
    return inv_gamma * (head.value / theta + tail.value);
}

SeriesEval survival_return_info(double x, double tau, double L, const ModelParams& p,
                                const SeriesControl& ctrl) {
    validate_span_point(x, L);
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "scaled time tau must be non-negative and finite");
    }
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    if (tau == 0.0) return SeriesEval{1.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        return mc.gamma_n * averaged_mode_weight(mc, p.theta, tau);
    });
    s.value = std::clamp(s.value, 0.0, 1.0);
    return s;
}

double survival_return(double x, double tau, double L, const ModelParams& p,
                       const SeriesControl& ctrl) {
    return survival_return_info(x, tau, L, p, ctrl).value;
}

double survival_return_shorttime(double x, double tau, double L, const ModelParams& p,
                                 const SeriesControl& ctrl) {
    validate_span_point(x, L);
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "short-time expansion requires tau > 0");
    }
    if (on_absorbing_boundary(x, L)) return 0.0;
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    return sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        return mc.gamma_n * std::exp(-p.theta * mc.mu_minus * tau) *
               std::pow(1.0 + mc.mu_minus * mc.mu_minus * tau, -p.theta);
    }).value;
}

double survival_return_longtime(double x, double tau, double L, const ModelParams& p,
                                const SeriesControl& ctrl) {
    validate_span_point(x, L);
    if (!(tau >= 0.0) || !std::isfinite(tau)) {
        throw DomainError("tau", "scaled time tau must be non-negative and finite");
    }
    if (on_absorbing_boundary(x, L)) return 0.0;
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    return sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        return mc.gamma_n *
               std::exp(p.theta * (std::log(mc.delta_n) - 2.0 * std::log(mc.mu_plus) -
                                   mc.mu_minus * tau));
    }).value;
}

SeriesEval met_return_info(double x, double L, const ModelParams& p,
                           const SeriesControl& ctrl) {
    validate_span_point(x, L);
    if (on_absorbing_boundary(x, L)) return SeriesEval{0.0, 0, 0.0};
    ModeTable modes(L, p);
    const double u = kPi * x / L;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        const ModeCoefficients& mc = modes[n];
        double sp = p.theta * mc.mu_minus / mc.delta_n;
        double ratio = mc.mu_minus / mc.mu_plus;
        double hyp = gauss_2f1(p.theta, sp, 1.0 + sp, ratio * ratio);
        return mc.gamma_n / mc.mu_minus *
               std::exp(p.theta * (std::log(mc.delta_n) - 2.0 * std::log(mc.mu_plus))) *
               hyp;
    });
    s.value /= p.alpha * p.theta;
    s.truncation_estimate /= p.alpha * p.theta;
    return s;
}

double met_return(double x, double L, const ModelParams& p, const SeriesControl& ctrl) {
    return met_return_info(x, L, p, ctrl).value;
}

double met_return_small_span(double x, double L, const ModelParams& p,
                             const SeriesControl& ctrl) {
    validate_span_point(x, L);
    if (on_absorbing_boundary(x, L)) return 0.0;
    const double u = kPi * x / L;
    const double theta = p.theta;

    if (std::abs(theta - 1.0) <= 1e-9) {
        ModeTable modes(L, p);
        SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
            const ModeCoefficients& mc = modes[n];
            return mc.gamma_n / (mc.beta_n * mc.beta_n) *
                   std::log(mc.beta_n / (4.0 * L));
        });
        return 4.0 * L * L / p.alpha * s.value;
    }

    if (theta < 1.0) {
        double pref = std::pow(2.0, 2.0 * theta + 3.0) / (kPi * p.alpha * theta) *
                      std::pow(p.alpha / (kPi * p.k), theta + 1.0) *
                      std::exp(ln_gamma(1.0 + 0.5 * theta) + ln_gamma(1.0 - theta) -
                               ln_gamma(1.0 - 0.5 * theta));
        SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
            double odd = 2.0 * n + 1.0;
            double sign = (n % 2 == 0) ? 1.0 : -1.0;
            return sign * std::pow(odd, -(theta + 2.0));
        });
        return pref * std::pow(L, theta + 1.0) * s.value;
    }

    double pref = 32.0 / (kPi * p.alpha * theta) *
                  std::pow(p.alpha / (kPi * p.k), 2.0) * (0.5 * theta) / (theta - 1.0);
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        double odd = 2.0 * n + 1.0;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return sign / (odd * odd * odd);
    });
    return pref * L * L * s.value;
}

SpanScalingReport met_return_span_scaling(double x_frac,
                                          const std::vector<double>& spans,
                                          const ModelParams& p,
                                          const SeriesControl& ctrl) {
    if (spans.size() < 2) {
        throw DomainError("spans", "span scaling needs at least two span values");
    }
    if (!(std::abs(x_frac) < 0.5)) {
        throw DomainError("x_frac", "x_frac must satisfy |x_frac| < 1/2");
    }
    double lmin = spans.front(), lmax = spans.front();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (double L : spans) {
        if (!(L > 0.0)) throw DomainError("spans", "spans must be positive");
        lmin = std::min(lmin, L);
        lmax = std::max(lmax, L);
        double t = met_return(x_frac * L, L, p, ctrl);
        double lx = std::log(L), ly = std::log(t);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(spans.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;

    double exact_outer = met_return(x_frac * lmax, lmax, p, ctrl);
    double asym_outer = met_return_small_span(x_frac * lmax, lmax, p, ctrl);
    double gap = std::abs(asym_outer - exact_outer) / std::abs(exact_outer);

    ThetaRegime regime = std::abs(p.theta - 1.0) <= 1e-9
                             ? ThetaRegime::equal_one
                             : (p.theta < 1.0 ? ThetaRegime::below_one
                                              : ThetaRegime::above_one);
    return SpanScalingReport{regime, slope, std::exp(intercept), {lmin, lmax}, gap};
}

}  // namespace hesc

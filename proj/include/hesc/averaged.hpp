#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hesc/escape2d.hpp"
#include "hesc/model.hpp"
#include "hesc/series.hpp"

namespace hesc {

// Quantities averaged over the stationary law of the rescaled variance,
// which is Gamma(theta) with unit rate.

// Stationary density of v.  At v = 0 it diverges for theta < 1, equals 1
// for theta = 1 and vanishes for theta > 1.
double stationary_density(double v, double theta);

// Int_0^inf f(v) p_st(v) dv by adaptive quadrature.  The v^(theta-1) weight
// at the origin and the exponential tail are absorbed by substitutions, so f
// only needs to be bounded and piecewise smooth.
double gamma_average(const std::function<double(double)>& f, double theta,
                     double rel_tol = 1e-10);

// Survival probability of the return at scaled time tau with the initial
// variance drawn from the stationary law.  Clamped to [0, 1].
SeriesEval survival_return_info(double x, double tau, double L, const ModelParams& p,
                                const SeriesControl& ctrl = {});
double survival_return(double x, double tau, double L, const ModelParams& p,
                       const SeriesControl& ctrl = {});

// Short- and long-time expansions of survival_return.
double survival_return_shorttime(double x, double tau, double L, const ModelParams& p,
                                 const SeriesControl& ctrl = {});
double survival_return_longtime(double x, double tau, double L, const ModelParams& p,
                                const SeriesControl& ctrl = {});

// Mean escape time in days, averaged over the stationary variance law.
SeriesEval met_return_info(double x, double L, const ModelParams& p,
                           const SeriesControl& ctrl = met_series_control());
double met_return(double x, double L, const ModelParams& p,
                  const SeriesControl& ctrl = met_series_control());

// Narrow-span limit of met_return in days.  The scaling law switches at
// theta = 1: T ~ L^(theta+1) for theta < 1, T ~ L^2 for theta > 1 and
// T ~ L^2 ln(1/L) at theta = 1 (dispatched when |theta - 1| <= 1e-9).
double met_return_small_span(double x, double L, const ModelParams& p,
                             const SeriesControl& ctrl = met_series_control());

enum class ThetaRegime { below_one, equal_one, above_one };

// Diagnostic for the narrow-span scaling: evaluates met_return on the given
// spans (x = x_frac * L each time), fits log T against log L, and reports
// the relative gap to met_return_small_span at the largest span.
struct SpanScalingReport {
    ThetaRegime theta_regime;
    double fitted_exponent;
    double prefactor;                   // exp(intercept) of the log-log fit
    std::pair<double, double> fit_range;  // smallest and largest span used
    double outer_rel_gap;
};

SpanScalingReport met_return_span_scaling(double x_frac,
                                          const std::vector<double>& spans,
                                          const ModelParams& p,
                                          const SeriesControl& ctrl = met_series_control());

}  // namespace hesc

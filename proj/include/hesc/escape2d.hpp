#pragma once

#include "hesc/model.hpp"
#include "hesc/series.hpp"

namespace hesc {

// Joint escape problem: the return x starts at |x| <= L/2 and is absorbed at
// +-L/2; v is the rescaled variance.  All inputs are scaled (tau = alpha t),
// except that mean escape times are returned in days.

// Probability that the return has stayed inside (-L/2, L/2) up to scaled
// time tau, starting from (x, v).  Clamped to [0, 1].
SeriesEval survival_2d_info(double x, double v, double tau, double L,
                            const ModelParams& p, const SeriesControl& ctrl = {});
double survival_2d(double x, double v, double tau, double L, const ModelParams& p,
                   const SeriesControl& ctrl = {});

// Short-time expansion of survival_2d.  Valid while mu-_n tau < 1 for every
// mode that still matters; throws DomainError when that breaks before the
// series converges.
double survival_2d_shorttime(double x, double v, double tau, double L,
                             const ModelParams& p, const SeriesControl& ctrl = {});

// Long-time limit of survival_2d (slowest-decay behaviour of each mode).
// Accurate in the wide-span regime beta_0 << L.
double survival_2d_longtime(double x, double v, double tau, double L,
                            const ModelParams& p, const SeriesControl& ctrl = {});

// Density of the escape time in scaled time, f = -dS/dtau.  Requires
// tau > 0; convergence degrades as tau -> 0+ (more modes needed).
SeriesEval escape_density_info(double x, double v, double tau, double L,
                               const ModelParams& p, const SeriesControl& ctrl = {});
double escape_density(double x, double v, double tau, double L, const ModelParams& p,
                      const SeriesControl& ctrl = {});

// Mode series for mean escape times decay only polynomially in the mode
// index (as slowly as n^-2 when v = 0), so their default control trades
// tolerance for head-room in modes.
inline SeriesControl met_series_control() { return SeriesControl{1e-8, 20000, 3}; }

// Mean escape time in days from (x, v).  Works for v = 0 as well, but
// met_2d_zero_vol below is cheaper and independent of quadrature.
SeriesEval met_2d_info(double x, double v, double L, const ModelParams& p,
                       const SeriesControl& ctrl = met_series_control());
double met_2d(double x, double v, double L, const ModelParams& p,
              const SeriesControl& ctrl = met_series_control());

// Mean escape time in days for paths started at zero variance, via the
// hypergeometric closed form of each mode coefficient.
SeriesEval met_2d_zero_vol_info(double x, double L, const ModelParams& p,
                                const SeriesControl& ctrl = met_series_control());
double met_2d_zero_vol(double x, double L, const ModelParams& p,
                       const SeriesControl& ctrl = met_series_control());

// High-volatility limit of the mean escape time in days: at large v the
// return diffuses so fast that the variance barely moves, giving
// (2 alpha / (k^2 v)) ((L/2)^2 - x^2).
double met_2d_large_vol(double x, double v, double L, const ModelParams& p);

}  // namespace hesc

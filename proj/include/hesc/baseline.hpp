#pragma once

#include "hesc/series.hpp"

namespace hesc {

// Constant-volatility reference: the return diffuses with fixed daily
// volatility sigma between absorbing barriers at +-L/2.  Times are in days.
struct WienerParams {
    double sigma;
    double L;
};

SeriesEval survival_wiener_info(double x, double t, const WienerParams& wp,
                                const SeriesControl& ctrl = {});
double survival_wiener(double x, double t, const WienerParams& wp,
                       const SeriesControl& ctrl = {});

// Mean escape time ((L/2)^2 - x^2) / sigma^2, in days.
double met_wiener(double x, const WienerParams& wp);

}  // namespace hesc

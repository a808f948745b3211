#include "hesc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hesc/errors.hpp"

namespace hesc {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(double x, const WienerParams& wp) {
    if (!(wp.sigma > 0.0) || !std::isfinite(wp.sigma)) {
        throw DomainError("sigma", "sigma must be positive and finite");
    }
    if (!(wp.L > 0.0) || !std::isfinite(wp.L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
    if (!(std::abs(x) <= 0.5 * wp.L)) {
        throw DomainError("x", "start point must satisfy |x| <= L/2");
    }
}

}  // namespace

SeriesEval survival_wiener_info(double x, double t, const WienerParams& wp,
                                const SeriesControl& ctrl) {
    validate(x, wp);
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("t", "time t must be non-negative and finite");
    }
    if (std::abs(x) == 0.5 * wp.L) return SeriesEval{0.0, 0, 0.0};
    if (t == 0.0) return SeriesEval{1.0, 0, 0.0};
    const double u = kPi * x / wp.L;
    const double rate0 = 0.5 * std::pow(kPi * wp.sigma / wp.L, 2) * t;
    SeriesEval s = sum_cosine_modes(ctrl, u, [&](int n) {
        double odd = 2.0 * n + 1.0;
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        return 4.0 / kPi * sign / odd * std::exp(-rate0 * odd * odd);
    });
    s.value = std::clamp(s.value, 0.0, 1.0);
    return s;
}

double survival_wiener(double x, double t, const WienerParams& wp,
                       const SeriesControl& ctrl) {
    return survival_wiener_info(x, t, wp, ctrl).value;
}

double met_wiener(double x, const WienerParams& wp) {
    validate(x, wp);
    return (0.25 * wp.L * wp.L - x * x) / (wp.sigma * wp.sigma);
}

}  // namespace hesc

#include "hesc/model.hpp"

#include <cmath>
#include <string>

#include "hesc/errors.hpp"

namespace hesc {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(field, std::string(field) + " must be positive and finite");
    }
}

}  // namespace

ModelParams make_params(double alpha, double m, double k) {
    require_positive(alpha, "alpha");
    require_positive(m, "m");
    require_positive(k, "k");
    return ModelParams{alpha, m, k, 2.0 * alpha * m * m / (k * k)};
}

ModelParams params_from_theta(double alpha, double m, double theta) {
    require_positive(alpha, "alpha");
    require_positive(m, "m");
    require_positive(theta, "theta");
    double k = std::sqrt(2.0 * alpha * m * m / theta);
    return ModelParams{alpha, m, k, theta};
}

ScaledPoint scale_point(double t, double y, const ModelParams& p) {
    if (!(y >= 0.0)) throw DomainError("y", "variance y must be non-negative");
    return ScaledPoint{p.alpha * t, 2.0 * p.alpha * y / (p.k * p.k)};
}

PhysicalPoint unscale_point(const ScaledPoint& s, const ModelParams& p) {
    if (!(s.v >= 0.0)) throw DomainError("v", "scaled variance v must be non-negative");
    return PhysicalPoint{s.tau / p.alpha, s.v * p.k * p.k / (2.0 * p.alpha)};
}

}  // namespace hesc

#pragma once

namespace hesc {

// Mean-reverting stochastic-volatility model
//
//   dx = sqrt(y) dW1,   dy = -alpha (y - m^2) dt + k sqrt(y) dW2
//
// with independent Brownian drivers.  Time is measured in days, so alpha has
// units 1/day, m is a daily volatility (1/sqrt(day)) and k has units m^2/day.
//
// theta = 2 alpha m^2 / k^2 is the dimensionless stationary mean of the
// rescaled variance and decides the behaviour of the process near y = 0:
// theta >= 1 keeps paths strictly positive, theta < 1 lets them touch zero.
struct ModelParams {
    double alpha;  // variance mean-reversion rate, 1/day
    double m;      // typical daily volatility, 1/sqrt(day)
    double k;      // amplitude of variance noise
    double theta;  // 2 alpha m^2 / k^2, derived
};

// Build parameters from (alpha, m, k); theta is derived.  Throws DomainError
// if any of the three is not positive and finite.
ModelParams make_params(double alpha, double m, double k);

// Build parameters from (alpha, m, theta); k = sqrt(2 alpha m^2 / theta).
ModelParams params_from_theta(double alpha, double m, double theta);

// Dimensionless coordinates: tau = alpha t, v = (2 alpha / k^2) y.
// The stationary distribution of v is Gamma(theta) with unit rate.
struct ScaledPoint {
    double tau;
    double v;
};

ScaledPoint scale_point(double t, double y, const ModelParams& p);

struct PhysicalPoint {
    double t;
    double y;
};

PhysicalPoint unscale_point(const ScaledPoint& s, const ModelParams& p);

}  // namespace hesc

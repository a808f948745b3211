#include "hesc/modal.hpp"

#include <cmath>
#include <numbers>

#include "hesc/errors.hpp"

namespace hesc {

ModeCoefficients mode_coefficients(int n, double L, const ModelParams& p) {
    if (n < 0) throw DomainError("n", "mode index must be non-negative");
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
    const double pi = std::numbers::pi;
    const double odd = 2.0 * n + 1.0;
    const double beta = (p.k / p.alpha) * odd * pi;
    const double ratio = beta / L;
    const double delta = std::sqrt(1.0 + ratio * ratio);
    // mu- = (delta - 1)/2 written cancellation-free for beta/L << 1.
    const double mu_minus = ratio * ratio / (2.0 * (delta + 1.0));
    const double mu_plus = mu_minus + 1.0;
    const double gamma = 4.0 * ((n % 2 == 0) ? 1.0 : -1.0) / (pi * odd);
    return ModeCoefficients{n, gamma, beta, delta, mu_plus, mu_minus};
}

double riccati_B(const ModeCoefficients& mc, double tau) {
    if (!(tau >= 0.0)) throw DomainError("tau", "riccati_B requires tau >= 0");
    const double e = std::expm1(-mc.delta_n * tau);  // in [-1, 0]
    return mc.mu_minus * (-e) / (1.0 + (mc.mu_minus / mc.mu_plus) * (1.0 + e));
}

double riccati_A(const ModeCoefficients& mc, double theta, double tau) {
    if (!(tau >= 0.0)) throw DomainError("tau", "riccati_A requires tau >= 0");
    const double e = std::expm1(-mc.delta_n * tau);
    return theta * (mc.mu_minus * tau + std::log1p(mc.mu_minus / mc.delta_n * e));
}

RiccatiRates riccati_rates(const ModeCoefficients& mc, double theta, double tau) {
    const double b = riccati_B(mc, tau);
    return RiccatiRates{theta * b, -b - b * b + mc.mu_plus * mc.mu_minus};
}

ModeTable::ModeTable(double L, const ModelParams& p) : L_(L), p_(p) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
}

const ModeCoefficients& ModeTable::operator[](int n) const {
    if (n < 0) throw DomainError("n", "mode index must be non-negative");
    std::scoped_lock lock(mu_);
    while (static_cast<int>(cache_.size()) <= n) {
        cache_.push_back(mode_coefficients(static_cast<int>(cache_.size()), L_, p_));
    }
    return cache_[n];
}

}  // namespace hesc

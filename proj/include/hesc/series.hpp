#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "hesc/errors.hpp"

namespace hesc {

struct SeriesControl {
    double rel_tol = 1e-10;
    int max_modes = 512;
    // Number of consecutive below-tolerance terms required before stopping.
    // Guards against cosine factors that pass through zero mid-series.
    int consecutive_small = 3;
};

struct SeriesEval {
    double value = 0.0;
    int modes_used = 0;
    double truncation_estimate = 0.0;
};

// Sums term(0) + term(1) + ... under the control's truncation policy.
//
// Terms are measured against scale = max(|partial sum|, max |term|) so that
// cancellation-heavy points (all cosines near zero) do not demand absolute
// accuracy the doubles cannot deliver.  Stopping requires `consecutive_small`
// successive small terms plus a tail bound: geometric continuation of the
// last ratio when terms decay, or the last-term bound when the recent terms
// alternate strictly in sign.  Throws ConvergenceError if max_modes terms do
// not satisfy the policy.
template <class TermFn>
SeriesEval sum_modes(const SeriesControl& ctrl, TermFn&& term) {
    constexpr double kFloor = 1e-300;
    double sum = 0.0;
    double largest = 0.0;
    double prev_abs = -1.0;  // sentinel: no previous term yet
    int prev_sign = 0;
    int small_run = 0;
    int alternating_run = 0;

    for (int n = 0; n < ctrl.max_modes; ++n) {
        double t = term(n);
        if (!std::isfinite(t)) {
            throw ConvergenceError("series term is not finite", n + 1, HUGE_VAL);
        }
        sum += t;
        double a = std::abs(t);
        largest = std::max(largest, a);
        double scale = std::max(std::abs(sum), largest) + kFloor;

        int sign = (t > 0.0) - (t < 0.0);
        if (prev_sign != 0 && sign != 0 && sign == -prev_sign) {
            ++alternating_run;
        } else {
            alternating_run = 0;
        }
        prev_sign = sign;

        double tail = HUGE_VAL;
        if (prev_abs >= 0.0) {
            if (a == 0.0 && prev_abs == 0.0) {
                tail = 0.0;
            } else if (prev_abs > 0.0 && a < prev_abs) {
                double r = a / prev_abs;
                tail = a * r / (1.0 - r);
            }
        }
        // An alternating, decreasing tail is bounded by its first omitted term.
        if (alternating_run >= ctrl.consecutive_small && prev_abs >= 0.0 && a <= prev_abs) {
            tail = std::min(tail, a);
        }
        prev_abs = a;

        small_run = (a <= ctrl.rel_tol * scale) ? small_run + 1 : 0;
        if (small_run >= ctrl.consecutive_small && tail <= ctrl.rel_tol * scale) {
            return SeriesEval{sum, n + 1, tail};
        }
    }
    throw ConvergenceError("mode series did not converge", ctrl.max_modes,
                           prev_abs < 0.0 ? HUGE_VAL : prev_abs);
}

// Sums coef(0) cos(u) + coef(1) cos(3u) + ... for |u| < pi/2, where coef(n)
// carries sign (-1)^n and |coef(n)| is eventually monotone decreasing.
//
// Every spectral sum in this library has that shape.  For coefficients with
// only polynomial decay the generic engine above cannot bound the tail (the
// sign pattern of (-1)^n cos((2n+1)u) has period 4 in general), but Abel
// summation gives |sum_{n>=N} coef(n) cos((2n+1)u)| <= |coef(N)| / cos(u)
// once |coef| is monotone, which is what this engine uses.
template <class CoefFn>
SeriesEval sum_cosine_modes(const SeriesControl& ctrl, double u, CoefFn&& coef) {
    constexpr double kFloor = 1e-300;
    const double cos_u = std::cos(u);
    if (!(cos_u > 0.0)) {
        throw DomainError("u", "sum_cosine_modes requires |u| < pi/2");
    }
    double sum = 0.0;
    double largest = 0.0;
    double prev_mag = -1.0;
    int mono_run = 0;

    for (int n = 0; n < ctrl.max_modes; ++n) {
        double c = coef(n);
        if (!std::isfinite(c)) {
            throw ConvergenceError("series coefficient is not finite", n + 1, HUGE_VAL);
        }
        double t = c * std::cos((2 * n + 1) * u);
        sum += t;
        double mag = std::abs(c);
        largest = std::max(largest, std::abs(t));
        double scale = std::max(std::abs(sum), largest) + kFloor;

        mono_run = (prev_mag >= 0.0 && mag <= prev_mag) ? mono_run + 1 : 0;
        prev_mag = mag;

        if (mono_run >= ctrl.consecutive_small) {
            double tail = mag / cos_u;
            if (tail <= ctrl.rel_tol * scale) {
                return SeriesEval{sum, n + 1, tail};
            }
        }
    }
    throw ConvergenceError("cosine mode series did not converge", ctrl.max_modes,
                           prev_mag < 0.0 ? HUGE_VAL : prev_mag / cos_u);
}

}  // namespace hesc

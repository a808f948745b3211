#pragma once

#include <functional>
#include <vector>

namespace hesc {

struct QuadControl {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 2000;
};

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Adaptive Gauss-Kronrod 7-15 on [a, b].  Bisects the interval with the
// largest error estimate until the global estimate meets
// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadControl& ctrl = {});

// Same, but starts from the segments defined by `points` (ascending, at
// least two entries).  Use to seed known break or spike locations that a
// bisection cascade from the full interval would miss.
QuadResult integrate_segmented(const std::function<double(double)>& f,
                               const std::vector<double>& points,
                               const QuadControl& ctrl = {});

}  // namespace hesc

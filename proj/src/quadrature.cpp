#include "hesc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hesc/errors.hpp"

namespace hesc {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule.  Nodes are the
// positive abscissae; the Gauss points are the odd-indexed entries.
constexpr double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
constexpr double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

struct Segment {
    double a, b;
    double value;
    double error;
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b,
                         int& evaluations) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    double fc = f(center);
    fv[14] = fc;
    for (int j = 0; j < 7; ++j) {
        fv[j] = f(center - half * kXgk[j]);
        fv[7 + j] = f(center + half * kXgk[j]);
    }
    evaluations += 15;
    for (double y : fv) {
        if (!std::isfinite(y)) {
            throw ConvergenceError("integrand returned a non-finite value", evaluations,
                                   HUGE_VAL);
        }
    }

    double resk = kWgk[7] * fc;
    double resabs = std::abs(resk);
    double resg = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double fsum = fv[j] + fv[7 + j];
        resk += kWgk[j] * fsum;
        resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[7 + j]));
        if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    }
    double reskh = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[7 + j] - reskh));
    }

    double err = std::abs((resk - resg) * half);
    resasc *= std::abs(half);
    resabs *= std::abs(half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(err, 50.0 * eps * resabs);
    }
    return Segment{a, b, resk * half, err};
}

QuadResult run_adaptive(const std::function<double(double)>& f,
                        std::vector<Segment> segments, const QuadControl& ctrl,
                        int evaluations) {
    auto tally = [&segments]() {
        double value = 0.0, error = 0.0;
        for (const Segment& s : segments) {
            value += s.value;
            error += s.error;
        }
        return std::pair{value, error};
    };

    while (true) {
        auto [value, error] = tally();
        double target = std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(value));
        if (error <= target) {
            return QuadResult{value, error, evaluations, true};
        }
        if (static_cast<int>(segments.size()) >= ctrl.max_intervals) {
            return QuadResult{value, error, evaluations, false};
        }
        auto worst = std::max_element(
            segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.error < r.error; });
        double a = worst->a, b = worst->b;
        double mid = 0.5 * (a + b);
        if (!(a < mid && mid < b)) {
            // Interval no longer splittable in double precision.
            auto [v, e] = tally();
            return QuadResult{v, e, evaluations, e <= std::max(ctrl.abs_tol, ctrl.rel_tol * std::abs(v))};
        }
        *worst = evaluate_segment(f, a, mid, evaluations);
        segments.push_back(evaluate_segment(f, mid, b, evaluations));
    }
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const QuadControl& ctrl) {
    if (!(a < b)) throw DomainError("interval", "integration requires a < b");
    int evaluations = 0;
    std::vector<Segment> segments{evaluate_segment(f, a, b, evaluations)};
    return run_adaptive(f, std::move(segments), ctrl, evaluations);
}

QuadResult integrate_segmented(const std::function<double(double)>& f,
                               const std::vector<double>& points,
                               const QuadControl& ctrl) {
    if (points.size() < 2) {
        throw DomainError("points", "integrate_segmented needs at least two points");
    }
    int evaluations = 0;
    std::vector<Segment> segments;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i] < points[i + 1])) {
            throw DomainError("points", "breakpoints must be strictly increasing");
        }
        segments.push_back(evaluate_segment(f, points[i], points[i + 1], evaluations));
    }
    return run_adaptive(f, std::move(segments), ctrl, evaluations);
}

}  // namespace hesc

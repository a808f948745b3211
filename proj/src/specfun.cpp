#include "hesc/specfun.hpp"

#include <cmath>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <vector>

#include "hesc/errors.hpp"
#include "hesc/quadrature.hpp"

namespace hesc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606065121;

// Lanczos approximation, g = 607/128 with 15 coefficients.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczosC[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

// sin(pi x) with exact argument reduction (x - remainder(x,2) is an even
// integer, so no precision is lost for large |x|).
double sin_pi(double x) {
    return std::sin(kPi * std::remainder(x, 2.0));
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Product of Gamma(num...)/Gamma(den...) via signed logs.  A pole in a
// denominator makes the whole ratio zero; a pole in a numerator is a caller
// error.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_abs = 0.0;
    int sign = 1;
    for (double x : num) {
        if (is_nonpositive_integer(x)) {
            throw DomainError("gamma", "gamma ratio has a pole in the numerator");
        }
        SignedLnGamma g = ln_gamma_signed(x);
        log_abs += g.log_abs;
        sign *= g.sign;
    }
    for (double x : den) {
        if (is_nonpositive_integer(x)) return 0.0;
        SignedLnGamma g = ln_gamma_signed(x);
        log_abs -= g.log_abs;
        sign *= g.sign;
    }
    return sign * std::exp(log_abs);
}

// Plain power series sum_j (a)_j (b)_j / ((c)_j j!) z^j.  Terminates exactly
// when a or b is a non-positive integer.  Throws if max_terms is exhausted
// before the geometric tail bound closes.
double f21_series(double a, double b, double c, double z, int max_terms) {
    double term = 1.0;
    double sum = 1.0;
    double largest = 1.0;
    int small_run = 0;
    for (int j = 0; j < max_terms; ++j) {
        term *= (a + j) * (b + j) / ((c + j) * (1.0 + j)) * z;
        if (term == 0.0) return sum;
        sum += term;
        largest = std::max(largest, std::abs(term));
        double scale = std::max(std::abs(sum), largest);
        double q = std::abs(z) * std::abs(a + j + 1) * std::abs(b + j + 1) /
                   (std::abs(c + j + 1) * (j + 2));
        double tail = q < 1.0 ? std::abs(term) * q / (1.0 - q) : HUGE_VAL;
        small_run = (std::abs(term) <= 5e-16 * scale) ? small_run + 1 : 0;
        if (small_run >= 2 && tail <= 5e-16 * scale) return sum;
    }
    throw ConvergenceError("hypergeometric series did not converge", max_terms,
                           std::abs(term));
}

// c = a + b exactly: logarithmic connection formula in w = 1 - z,
//   F = G(a+b)/(G(a)G(b)) sum_j ((a)_j (b)_j / (j!)^2)
//         [2 psi(j+1) - psi(a+j) - psi(b+j) - ln w] w^j.
// Requires a, b > 0 so every digamma argument stays positive.
double f21_log_case(double a, double b, double w) {
    const double pref = std::exp(ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b));
    const double lw = std::log(w);
    double poch = 1.0;  // (a)_j (b)_j / (j!)^2 * w^j
    double psa = digamma(a);
    double psb = digamma(b);
    double ps1 = -kEulerGamma;  // psi(1)
    double sum = 0.0;
    double largest = 0.0;
    int small_run = 0;
    for (int j = 0; j < 10000; ++j) {
        if (j > 0) {
            poch *= (a + j - 1.0) * (b + j - 1.0) / (static_cast<double>(j) * j) * w;
            psa += 1.0 / (a + j - 1.0);
            psb += 1.0 / (b + j - 1.0);
            ps1 += 1.0 / j;
        }
        double term = poch * (2.0 * ps1 - psa - psb - lw);
        sum += term;
        largest = std::max(largest, std::abs(term));
        double scale = std::max(std::abs(sum), largest) + 1e-300;
        small_run = (std::abs(term) <= 5e-16 * scale) ? small_run + 1 : 0;
        if (small_run >= 3) return pref * sum;
    }
    throw ConvergenceError("logarithmic hypergeometric series did not converge", 10000,
                           std::abs(poch));
}

// Adaptive quadrature of Euler's integral
//   F = G(c)/(G(b)G(c-b)) Int_0^1 xi^(b-1) (1-xi)^(c-b-1) (1-z xi)^(-a) dxi,
// valid for c > b > 0 and z < 1.  Endpoint power singularities are removed
// by the substitution xi = (1/2) u^(1/p); the near-xi=1 spike of the
// (1 - z xi)^(-a) factor at z -> 1 is seeded with geometric breakpoints.
double f21_euler_integral(double a, double b, double c, double z) {
    const double cb = c - b;
    const double w = 1.0 - z;
    const QuadControl ctrl{1e-12, 0.0, 4000};

    auto g_left = [&](double xi) {
        return std::pow(1.0 - xi, cb - 1.0) * std::pow(1.0 - z * xi, -a);
    };
    QuadResult left;
    if (b < 1.0) {
        double scale = std::pow(0.5, b) / b;
        left = integrate(
            [&](double u) { return scale * g_left(0.5 * std::pow(u, 1.0 / b)); }, 0.0,
            1.0, ctrl);
    } else {
        left = integrate([&](double xi) { return std::pow(xi, b - 1.0) * g_left(xi); },
                         0.0, 0.5, ctrl);
    }

    // Right half in eta = 1 - xi: integrand eta^(cb-1) (1-eta)^(b-1) (w+z eta)^(-a).
    auto h_right = [&](double eta) {
        return std::pow(1.0 - eta, b - 1.0) * std::pow(w + z * eta, -a);
    };
    std::vector<double> eta_pts{0.0};
    if (w < 0.05) {
        for (double e = w; e < 0.4; e *= 8.0) eta_pts.push_back(e);
    }
    eta_pts.push_back(0.5);
    QuadResult right;
    if (cb < 1.0) {
        double scale = std::pow(0.5, cb) / cb;
        std::vector<double> u_pts;
        u_pts.reserve(eta_pts.size());
        for (double e : eta_pts) u_pts.push_back(std::pow(2.0 * e, cb));
        right = integrate_segmented(
            [&](double u) { return scale * h_right(0.5 * std::pow(u, 1.0 / cb)); },
            u_pts, ctrl);
    } else {
        right = integrate_segmented(
            [&](double eta) { return std::pow(eta, cb - 1.0) * h_right(eta); }, eta_pts,
            ctrl);
    }

    if (!left.converged || !right.converged) {
        throw ConvergenceError("hypergeometric integral representation did not converge",
                               left.evaluations + right.evaluations,
                               left.error_estimate + right.error_estimate);
    }
    return std::exp(ln_gamma(c) - ln_gamma(b) - ln_gamma(cb)) * (left.value + right.value);
}

// Generic 1-z connection (d = c-a-b not near an integer):
//   F = C1 F(a,b;1-d;w) + C2 w^d F(c-a,c-b;1+d;w).
double f21_connection(double a, double b, double c, double d, double w) {
    double c1 = gamma_ratio({c, d}, {c - a, c - b});
    double c2 = gamma_ratio({c, -d}, {a, b});
    double s1 = c1 == 0.0 ? 0.0 : f21_series(a, b, 1.0 - d, w, 20000);
    double s2 = c2 == 0.0 ? 0.0 : f21_series(c - a, c - b, 1.0 + d, w, 20000);
    return c1 * s1 + c2 * std::pow(w, d) * s2;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("x", "ln_gamma requires x > 0");
    }
    if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
    double acc = kLanczosC[0];
    for (int i = 1; i < 15; ++i) acc += kLanczosC[i] / (x - 1.0 + i);
    double t = x + kLanczosG - 0.5;
    return 0.5 * std::log(2.0 * kPi) + (x - 0.5) * std::log(t) - t + std::log(acc);
}

SignedLnGamma ln_gamma_signed(double x) {
    if (!std::isfinite(x)) throw DomainError("x", "ln_gamma_signed requires finite x");
    if (x > 0.0) return SignedLnGamma{ln_gamma(x), 1};
    double s = sin_pi(x);
    if (s == 0.0) {
        throw DomainError("x", "ln_gamma_signed pole at non-positive integer");
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)).
    double log_abs = std::log(kPi) - std::log(std::abs(s)) - ln_gamma(1.0 - x);
    return SignedLnGamma{log_abs, s > 0.0 ? 1 : -1};
}

double digamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("x", "digamma requires x > 0");
    }
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double w = 1.0 / (x * x);
    double series =
        w * (1.0 / 12.0 +
             w * (-1.0 / 120.0 +
                  w * (1.0 / 252.0 +
                       w * (-1.0 / 240.0 +
                            w * (1.0 / 132.0 +
                                 w * (-691.0 / 32760.0 + w * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 / x - series;
}

double gauss_2f1(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
        throw DomainError("z", "gauss_2f1 requires finite arguments");
    }
    if (!(b > 0.0) || !(c > b)) {
        throw DomainError("c", "gauss_2f1 requires c > b > 0");
    }
    if (!(z > -1.0) || z > 1.0) {
        throw DomainError("z", "gauss_2f1 requires -1 < z <= 1");
    }
    if (a == 0.0) return 1.0;
    if (is_nonpositive_integer(a)) {
        return f21_series(a, b, c, z, static_cast<int>(-a) + 2);
    }
    if (z == 1.0) {
        double d = c - a - b;
        if (!(d > 0.0)) {
            throw DomainError("z", "gauss_2f1 at z = 1 requires c - a - b > 0");
        }
        return gamma_ratio({c, d}, {c - a, c - b});
    }
    if (z < -0.25) {
        // Pfaff: F(a,b;c;z) = (1-z)^(-a) F(a, c-b; c; z/(z-1)).
        return std::pow(1.0 - z, -a) * f21_series(a, c - b, c, z / (z - 1.0), 20000);
    }
    if (z <= 0.75) {
        return f21_series(a, b, c, z, 20000);
    }
    double w = 1.0 - z;
    double d = c - a - b;
    double dr = std::round(d);
    if (dr == 0.0 && std::abs(d) <= 1e-12 && a > 0.0) {
        return f21_log_case(a, b, w);
    }
    if (std::abs(d - dr) <= 1e-3) {
        return f21_euler_integral(a, b, c, z);
    }
    return f21_connection(a, b, c, d, w);
}

double gauss_2f1_linear_transform(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
        throw DomainError("z", "gauss_2f1_linear_transform requires finite arguments");
    }
    if (!(b > 0.0) || !(c > b)) {
        throw DomainError("c", "gauss_2f1_linear_transform requires c > b > 0");
    }
    if (!(z > -1.0) || !(z < 1.0)) {
        throw DomainError("z", "gauss_2f1_linear_transform requires -1 < z < 1");
    }
    return std::pow(1.0 - z, c - a - b) * f21_series(c - a, c - b, c, z, 200000);
}

}  // namespace hesc

#pragma once

namespace hesc {

// Natural log of the Gamma function for x > 0 (Lanczos approximation,
// g = 607/128, 15 terms; relative accuracy ~1e-15).
double ln_gamma(double x);

// ln |Gamma(x)| together with the sign of Gamma(x), for any real x that is
// not a pole (0, -1, -2, ...).  Negative arguments go through the reflection
// formula.
struct SignedLnGamma {
    double log_abs;
    int sign;  // -1 or +1
};
SignedLnGamma ln_gamma_signed(double x);

// Digamma (psi) function for x > 0.
double digamma(double x);

// Gauss hypergeometric function 2F1(a, b; c; z) for c > b > 0 and
// -1 < z <= 1 (z = 1 additionally requires c - a - b > 0).
//
// Dispatch: terminating polynomial when a or b is a non-positive integer;
// Pfaff transform for z < -0.25; direct power series for |z| <= 0.75; the
// 1-z connection formulas (including the logarithmic c = a + b case) for
// z > 0.75; Gauss's summation at z = 1.  Parameter sets that make the
// connection coefficients degenerate (c - a - b within 1e-3 of a nonzero
// integer, or within (1e-12, 1e-3] of zero) fall back to adaptive
// quadrature of the Euler integral representation.
double gauss_2f1(double a, double b, double c, double z);

// Euler's linear transformation (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) evaluated
// by direct power series.  Mathematically equal to gauss_2f1 on the shared
// domain; kept as an independent route for cross-checks and for moderate z
// where the transformed series converges faster than the plain one.
double gauss_2f1_linear_transform(double a, double b, double c, double z);

}  // namespace hesc

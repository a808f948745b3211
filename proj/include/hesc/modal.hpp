#pragma once

#include <deque>
#include <mutex>

#include "hesc/model.hpp"

namespace hesc {

// Per-mode spectral constants for span L.  With beta_n = (k/alpha)(2n+1)pi
// and Delta_n = sqrt(1 + (beta_n/L)^2):
//   mu+ - mu- = 1,  mu+ + mu- = Delta_n,  mu+ mu- = (beta_n / (2L))^2.
struct ModeCoefficients {
    int n;
    double gamma_n;  // boundary expansion weight 4 (-1)^n / (pi (2n+1))
    double beta_n;
    double delta_n;
    double mu_plus;
    double mu_minus;
};

ModeCoefficients mode_coefficients(int n, double L, const ModelParams& p);

// Time-dependent exponents for one mode, in scaled time tau:
//   B' = -B - B^2 + mu+ mu-,  B(0) = 0  (rises monotonically to mu-)
//   A' = theta B,             A(0) = 0.
// The closed forms are arranged around expm1/log1p so they stay accurate
// for tau << 1 and saturate cleanly for tau >> 1.
double riccati_B(const ModeCoefficients& mc, double tau);
double riccati_A(const ModeCoefficients& mc, double theta, double tau);

struct RiccatiRates {
    double dA;
    double dB;
};
RiccatiRates riccati_rates(const ModeCoefficients& mc, double theta, double tau);

// Lazily grown, internally synchronized coefficient table for one
// (L, params) pair.  References returned stay valid as the table grows.
class ModeTable {
public:
    ModeTable(double L, const ModelParams& p);

    const ModeCoefficients& operator[](int n) const;
    double span() const { return L_; }
    const ModelParams& params() const { return p_; }

private:
    double L_;
    ModelParams p_;
    mutable std::mutex mu_;
    mutable std::deque<ModeCoefficients> cache_;
};

}  // namespace hesc

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hesc/model.hpp"

namespace hesc {

// Counter-based Philox4x32-10 generator.  Keyed by (seed, stream); draws
// advance a 128-bit counter, so every (seed, stream) pair yields the same
// sequence regardless of how work is scheduled across threads.
class PathRng {
public:
    PathRng(std::uint64_t seed, std::uint64_t stream);

    double uniform();  // in (0, 1), never exactly 0 or 1
    double normal();   // standard normal via Marsaglia polar, pair cached

private:
    void refill();
    std::uint32_t next_u32();

    std::uint32_t key_[2];
    std::uint32_t ctr_[4];
    std::uint32_t buf_[4];
    int buf_pos_;
    double cached_normal_;
    bool has_cached_normal_;
};

// One draw from Gamma(theta) with unit rate: the stationary law of the
// rescaled variance.  Marsaglia-Tsang for theta >= 1, with the power boost
// for theta < 1.
double sample_gamma_stationary(double theta, PathRng& rng);

enum class V0Mode { fixed, gamma_stationary };

// Simulation settings.  dt and horizon are in scaled time tau.
struct McConfig {
    long n_paths = 10000;
    double dt = 1e-4;
    double horizon = 10.0;
    std::uint64_t seed = 1;
    V0Mode v0_mode = V0Mode::fixed;
    double v0 = 1.0;  // initial scaled variance when v0_mode == fixed
};

struct ExitSample {
    double exit_tau;  // grid time of the first step with |x| >= L/2
    bool censored;    // still inside at the horizon; exit_tau holds the horizon
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_effective = 0;
    double censored_fraction = 0.0;
    bool biased_low = false;
};

// Full-truncation Euler simulation of the scaled dynamics
//   dx = (k/alpha) sqrt(v+/2) dW1,   dv = -(v - theta) dtau + sqrt(2 v+) dW2,
// independent drivers, started from (x0, v0).  Exits are recorded at the end
// of the first step outside [-L/2, L/2] (no bridge correction), so estimates
// carry an O(sqrt(dt)) crossing bias; dt must satisfy
// dt <= 1e-2 * min(1, 1/Delta_0) or the config is rejected.  The horizon is
// rounded up to a whole number of steps.
std::vector<ExitSample> simulate_exit_times(double x0, double L, const ModelParams& p,
                                            const McConfig& cfg);

// Fraction of paths still inside at scaled time tau_eval.  Simulates exactly
// to tau_eval; cfg.horizon is ignored.
McEstimate mc_survival(double x0, double tau_eval, double L, const ModelParams& p,
                       const McConfig& cfg);

// Mean escape time in days.  Censored paths contribute the horizon, so the
// estimate is biased low when censoring is material (fraction >= 1e-3, see
// the biased_low flag).
McEstimate mc_met(double x0, double L, const ModelParams& p, const McConfig& cfg);

// Writes "path_index,exit_tau,censored" then one row per path, in path
// order, with exit_tau printed to 17 significant digits.
void dump_exit_times_csv(std::ostream& os, const std::vector<ExitSample>& samples);

}  // namespace hesc

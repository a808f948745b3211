#include "hesc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hesc/errors.hpp"
#include "hesc/modal.hpp"
#include "hesc/threading.hpp"

namespace hesc {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::uint32_t ctr[4], std::uint32_t k0, std::uint32_t k1) {
    std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    std::uint32_t out0 = hi1 ^ ctr[1] ^ k0;
    std::uint32_t out1 = lo1;
    std::uint32_t out2 = hi0 ^ ctr[3] ^ k1;
    std::uint32_t out3 = lo0;
    ctr[0] = out0;
    ctr[1] = out1;
    ctr[2] = out2;
    ctr[3] = out3;
}

}  // namespace

PathRng::PathRng(std::uint64_t seed, std::uint64_t stream)
    : buf_pos_(4), cached_normal_(0.0), has_cached_normal_(false) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    ctr_[0] = 0;
    ctr_[1] = 0;
    ctr_[2] = static_cast<std::uint32_t>(stream);
    ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
}

void PathRng::refill() {
    std::uint32_t block[4] = {ctr_[0], ctr_[1], ctr_[2], ctr_[3]};
    std::uint32_t k0 = key_[0], k1 = key_[1];
    for (int r = 0; r < 10; ++r) {
        if (r > 0) {
            k0 += kPhiloxW0;
            k1 += kPhiloxW1;
        }
        philox_round(block, k0, k1);
    }
    buf_[0] = block[0];
    buf_[1] = block[1];
    buf_[2] = block[2];
    buf_[3] = block[3];
    buf_pos_ = 0;
    // 64-bit counter increment in the low words; the high words hold the
    // stream id and are never touched.
    if (++ctr_[0] == 0) ++ctr_[1];
}

std::uint32_t PathRng::next_u32() {
    if (buf_pos_ >= 4) refill();
    return buf_[buf_pos_++];
}

double PathRng::uniform() {
    return (next_u32() + 0.5) * 0x1.0p-32;
}

double PathRng::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double a, b, s;
    do {
        a = 2.0 * uniform() - 1.0;
        b = 2.0 * uniform() - 1.0;
        s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_normal_ = b * f;
    has_cached_normal_ = true;
    return a * f;
}

double sample_gamma_stationary(double theta, PathRng& rng) {
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw DomainError("theta", "gamma sampling requires theta > 0");
    }
    if (theta < 1.0) {
        double boost = std::pow(rng.uniform(), 1.0 / theta);
        return sample_gamma_stationary(theta + 1.0, rng) * boost;
    }
    const double d = theta - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
        double z = rng.normal();
        double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        double vcube = t * t * t;
        double u = rng.uniform();
        if (std::log(u) < 0.5 * z * z + d - d * vcube + d * std::log(vcube)) {
            return d * vcube;
        }
    }
}

std::vector<ExitSample> simulate_exit_times(double x0, double L, const ModelParams& p,
                                            const McConfig& cfg) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw DomainError("L", "span L must be positive and finite");
    }
    if (!(std::abs(x0) < 0.5 * L)) {
        throw DomainError("x0", "simulation must start strictly inside (-L/2, L/2)");
    }
    if (cfg.n_paths < 1) throw DomainError("n_paths", "n_paths must be >= 1");
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
        throw DomainError("horizon", "horizon must be positive and finite");
    }
    if (cfg.v0_mode == V0Mode::fixed && (!(cfg.v0 >= 0.0) || !std::isfinite(cfg.v0))) {
        throw DomainError("v0", "fixed v0 must be non-negative and finite");
    }
    const double delta0 = mode_coefficients(0, L, p).delta_n;
    const double dt_max = 1e-2 * std::min(1.0, 1.0 / delta0);
    if (!(cfg.dt > 0.0) || cfg.dt > dt_max) {
        throw DomainError("dt", "dt must lie in (0, 1e-2 * min(1, 1/Delta_0)]");
    }

    const long n_steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt - 1e-9));
    const double sqrt_dt = std::sqrt(cfg.dt);
    const double half_span = 0.5 * L;
    const double diff_scale = p.k / p.alpha;

    std::vector<ExitSample> out(cfg.n_paths);
    parallel_for(cfg.n_paths, [&](long i) {
        PathRng rng(cfg.seed, static_cast<std::uint64_t>(i));
        double v = cfg.v0_mode == V0Mode::gamma_stationary
                       ? sample_gamma_stationary(p.theta, rng)
                       : cfg.v0;
        double x = x0;
        ExitSample sample{static_cast<double>(n_steps) * cfg.dt, true};
        for (long s = 0; s < n_steps; ++s) {
            double z1 = rng.normal();
            double z2 = rng.normal();
            double vp = std::max(v, 0.0);
            x += diff_scale * std::sqrt(0.5 * vp) * sqrt_dt * z1;
            v += -(vp - p.theta) * cfg.dt + std::sqrt(2.0 * vp) * sqrt_dt * z2;
            if (std::abs(x) >= half_span) {
                sample = ExitSample{static_cast<double>(s + 1) * cfg.dt, false};
                break;
            }
        }
        out[static_cast<std::size_t>(i)] = sample;
    });
    return out;
}

McEstimate mc_survival(double x0, double tau_eval, double L, const ModelParams& p,
                       const McConfig& cfg) {
    if (!(tau_eval > 0.0) || !std::isfinite(tau_eval)) {
        throw DomainError("tau", "mc_survival requires tau_eval > 0");
    }
    McConfig local = cfg;
    local.horizon = tau_eval;
    std::vector<ExitSample> samples = simulate_exit_times(x0, L, p, local);
    long alive = 0;
    for (const ExitSample& s : samples) alive += s.censored ? 1 : 0;
    const double n = static_cast<double>(samples.size());
    const double phat = alive / n;
    McEstimate est;
    est.mean = phat;
    est.std_error = std::sqrt(std::max(phat * (1.0 - phat), 0.0) / n);
    est.n_effective = static_cast<long>(samples.size());
    est.censored_fraction = phat;  // survivors are by construction censored
    est.biased_low = false;
    return est;
}

McEstimate mc_met(double x0, double L, const ModelParams& p, const McConfig& cfg) {
    std::vector<ExitSample> samples = simulate_exit_times(x0, L, p, cfg);
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    long censored = 0;
    for (const ExitSample& s : samples) {
        sum += s.exit_tau;
        censored += s.censored ? 1 : 0;
    }
    const double mean_tau = sum / n;
    double ss = 0.0;
    for (const ExitSample& s : samples) {
        double d = s.exit_tau - mean_tau;
        ss += d * d;
    }
    const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    McEstimate est;
    est.mean = mean_tau / p.alpha;  // scaled time -> days
    est.std_error = sd / std::sqrt(n) / p.alpha;
    est.n_effective = static_cast<long>(samples.size());
    est.censored_fraction = censored / n;
    est.biased_low = est.censored_fraction >= 1e-3;
    return est;
}

void dump_exit_times_csv(std::ostream& os, const std::vector<ExitSample>& samples) {
    os << "path_index,exit_tau,censored\n";
    char buf[64];
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.16e,%d", i, samples[i].exit_tau,
                      samples[i].censored ? 1 : 0);
        os << buf << '\n';
    }
}

}  // namespace hesc

// Copyright 2026 The sqlink Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqlink/montecarlo.h"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "sqlink/error.h"

namespace sqlink {

namespace {

constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

uint64_t join(uint32_t hi, uint32_t lo) {
    return (uint64_t{hi} << 32) | lo;
}

// (0, 1] with 53 random bits.
double open_unit(uint64_t bits) {
    return static_cast<double>((bits >> 11) + 1) * kTwoPow53Inv;
}

// [0, 1) with 53 random bits.
double closed_unit(uint64_t bits) {
    return static_cast<double>(bits >> 11) * kTwoPow53Inv;
}

// Top two bits: 00 -> B00, 01/10 -> BEN, 11 -> B11. Exactly (1/4, 1/2, 1/4).
BranchLabel branch_from_bits(uint32_t word) {
    switch (word >> 30) {
        case 0:
            return BranchLabel::B00;
        case 3:
            return BranchLabel::B11;
        default:
            return BranchLabel::BEN;
    }
}

struct Tally {
    std::array<uint64_t, 3> drawn{};
    std::array<uint64_t, 3> accepted{};
};

Tally run_range(const HomodyneSampler &sampler, uint64_t seed, uint64_t begin, uint64_t end) {
    Tally tally;
    PhiloxEngine rng(seed);
    rng.seek(begin * HomodyneSampler::kBlocksPerSample);
    for (uint64_t i = begin; i < end; ++i) {
        HomodyneSample s = sampler.sample(rng);
        auto k = static_cast<size_t>(s.branch);
        ++tally.drawn[k];
        tally.accepted[k] += s.accepted ? 1 : 0;
    }
    return tally;
}

double gaussian_mass(double mean, double sigma, double lo, double hi) {
    const double norm = 1.0 / (sigma * std::sqrt(2 * std::numbers::pi));
    auto density = [=](double x) {
        double z = (x - mean) / sigma;
        return norm * std::exp(-0.5 * z * z);
    };
    double error = 0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(density, lo, hi, 12, 1e-14, &error);
}

QuadratureFigures figures_from_marginals(const std::array<Marginal, 3> &marginals, double p_c, double zeta) {
    constexpr std::array<double, 3> weights = {0.25, 0.5, 0.25};
    QuadratureFigures out{};
    for (size_t k = 0; k < 3; ++k) {
        out.window_mass[k] = integrate_window(marginals[k].mean, marginals[k].variance, p_c);
        out.p_s += weights[k] * out.window_mass[k];
    }
    double entangled = weights[1] * out.window_mass[1] * (1 + zeta) / 2;
    out.fidelity = out.p_s > 0 ? entangled / out.p_s : std::numeric_limits<double>::quiet_NaN();
    return out;
}

}  // namespace

HomodyneSampler::HomodyneSampler(const LinkParams &params) : p_c_(params.p_c) {
    auto branches = build_link_branches(params);
    for (size_t k = 0; k < branches.size(); ++k) {
        marginals_[k] = homodyne_p_marginal(branches[k].probe);
    }
}

HomodyneSample HomodyneSampler::sample(PhiloxEngine &rng) const {
    PhiloxCounter first = rng.next_block();
    PhiloxCounter second = rng.next_block();
    BranchLabel branch = branch_from_bits(first[0]);
    double u1 = open_unit(join(first[3], first[2]));
    double u2 = closed_unit(join(second[1], second[0]));
    double normal = std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);

    const Marginal &m = marginals_[static_cast<size_t>(branch)];
    double p = m.mean + std::sqrt(m.variance) * normal;
    return HomodyneSample{branch, p, std::abs(p) <= p_c_};
}

HomodyneSample sample_link(const LinkParams &params, PhiloxEngine &rng) {
    return HomodyneSampler(params).sample(rng);
}

LinkEstimate estimate_link(const LinkParams &params, uint64_t n, uint64_t seed, unsigned workers) {
    if (n == 0) {
        throw LinkError(ErrorKind::InvalidParameter, "estimate_link: n must be >= 1");
    }
    HomodyneSampler sampler(params);
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<uint64_t>(n, 256)));

    std::vector<Tally> tallies(workers);
    if (workers == 1) {
        tallies[0] = run_range(sampler, seed, 0, n);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            uint64_t begin = n * w / workers;
            uint64_t end = n * (w + 1) / workers;
            threads.emplace_back([&, w, begin, end] { tallies[w] = run_range(sampler, seed, begin, end); });
        }
        for (auto &t : threads) {
            t.join();
        }
    }

    LinkEstimate est{};
    est.n_samples = n;
    est.seed = seed;
    for (const Tally &t : tallies) {
        for (size_t k = 0; k < 3; ++k) {
            est.drawn[k] += t.drawn[k];
            est.accepted[k] += t.accepted[k];
        }
    }

    uint64_t accepted = est.accepted[0] + est.accepted[1] + est.accepted[2];
    double nd = static_cast<double>(n);
    est.p_s_hat = static_cast<double>(accepted) / nd;
    est.std_err_ps = std::sqrt(est.p_s_hat * (1 - est.p_s_hat) / nd);

    // Accepted B00/B11 samples contribute fidelity 0, accepted BEN samples (1 + zeta)/2.
    double branch_fidelity = (1 + params.zeta) / 2;
    if (accepted == 0) {
        est.fidelity_hat = std::numeric_limits<double>::quiet_NaN();
        est.std_err_f = std::numeric_limits<double>::quiet_NaN();
    } else {
        double a = static_cast<double>(accepted);
        double q = static_cast<double>(est.accepted[1]) / a;
        est.fidelity_hat = branch_fidelity * q;
        est.std_err_f = branch_fidelity * std::sqrt(q * (1 - q) / a);
    }
    return est;
}

double integrate_window(double marginal_mean, double marginal_var, double p_c) {
    if (!(marginal_var > 0)) {
        throw LinkError(ErrorKind::InvalidParameter, "integrate_window: variance must be > 0");
    }
    if (!(p_c > 0)) {
        return 0.0;
    }
    // Outside +-40 sigma the density is below 1e-340 and contributes nothing representable.
    double sigma = std::sqrt(marginal_var);
    double lo = std::max(-p_c, marginal_mean - 40 * sigma);
    double hi = std::min(p_c, marginal_mean + 40 * sigma);
    if (!(lo < hi)) {
        return 0.0;
    }
    if (lo < marginal_mean && marginal_mean < hi) {
        return gaussian_mass(marginal_mean, sigma, lo, marginal_mean) + gaussian_mass(marginal_mean, sigma, marginal_mean, hi);
    }
    return gaussian_mass(marginal_mean, sigma, lo, hi);
}

QuadratureFigures quadrature_figures(const LinkParams &params) {
    params.validate();
    double shift = params.eta() * params.d();
    double var = kVacuumVariance * std::exp(-2 * params.r_prime());
    return figures_from_marginals({Marginal{shift, var}, Marginal{0.0, var}, Marginal{-shift, var}}, params.p_c, params.zeta);
}

QuadratureFigures exact_quadrature_figures(const LinkParams &params) {
    return figures_from_marginals(HomodyneSampler(params).marginals(), params.p_c, params.zeta);
}

}  // namespace sqlink

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

#ifndef SQLINK_MONTECARLO_H
#define SQLINK_MONTECARLO_H

#include <array>
#include <cstdint>

#include "sqlink/gaussian.h"
#include "sqlink/link_model.h"
#include "sqlink/philox.h"

/// Independent checks of the closed-form link figures.
///
/// Two routes, neither of which touches the erf kernel:
///  * seeded sampling of homodyne outcomes over the three-branch mixture;
///  * adaptive Gauss-Kronrod quadrature of the branch p marginals.
namespace sqlink {

struct HomodyneSample {
    BranchLabel branch;
    double p_value;
    bool accepted;
};

/// Draws homodyne outcomes from the exact branch marginals of one link.
/// Each draw consumes exactly kBlocksPerSample Philox blocks.
class HomodyneSampler {
   public:
    static constexpr uint64_t kBlocksPerSample = 2;

    explicit HomodyneSampler(const LinkParams &params);

    HomodyneSample sample(PhiloxEngine &rng) const;

    const std::array<Marginal, 3> &marginals() const noexcept {
        return marginals_;
    }

   private:
    std::array<Marginal, 3> marginals_;
    double p_c_;
};

/// One draw. Builds the branch marginals on every call; use HomodyneSampler in loops.
HomodyneSample sample_link(const LinkParams &params, PhiloxEngine &rng);

struct LinkEstimate {
    double p_s_hat;
    /// NaN when no sample was accepted.
    double fidelity_hat;
    double std_err_ps;
    /// NaN when fewer than one sample was accepted.
    double std_err_f;
    uint64_t n_samples;
    uint64_t seed;
    /// Samples drawn from / accepted in each branch, in label order.
    std::array<uint64_t, 3> drawn;
    std::array<uint64_t, 3> accepted;
};

/// Monte Carlo estimate of (P_s, F). Sample i always uses Philox blocks
/// [2i, 2i+2) under key `seed`, so the result is bit-identical for any `workers`.
/// Throws LinkError(InvalidParameter) for n = 0.
LinkEstimate estimate_link(const LinkParams &params, uint64_t n, uint64_t seed, unsigned workers = 1);

/// Mass of N(marginal_mean, marginal_var) on [-p_c, p_c] by adaptive
/// Gauss-Kronrod quadrature; absolute error <= 1e-12.
double integrate_window(double marginal_mean, double marginal_var, double p_c);

struct QuadratureFigures {
    double p_s;
    /// NaN when p_s == 0.
    double fidelity;
    std::array<double, 3> window_mass;
};

/// Quadrature on the effective pure-state model: means (+eta d, 0, -eta d), variance e^{-2r'}/4.
QuadratureFigures quadrature_figures(const LinkParams &params);

/// Quadrature on the exact branch covariances from build_link_branches.
QuadratureFigures exact_quadrature_figures(const LinkParams &params);

}  // namespace sqlink

#endif

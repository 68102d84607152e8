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

#ifndef SQLINK_LINK_MODEL_H
#define SQLINK_LINK_MODEL_H

#include <Eigen/Dense>
#include <array>
#include <string_view>

#include "sqlink/gaussian.h"

/// One elementary repeater link: a squeezed probe picks up a qubit-conditional
/// phase at station A, crosses a lossy fiber, picks up a second conditional
/// phase at station B, is phase-compensated, and is homodyned in p at B.
namespace sqlink {

/// Physical knobs of one link. Derived quantities are computed on demand.
struct LinkParams {
    double alpha = 150.0;
    double r = 1.61;
    /// Dispersive phase per node, radians.
    double theta = 0.00867;
    /// Fiber power transmittance.
    double eta_sq = 2.0 / 3.0;
    double zeta = 0.995;
    /// Homodyne acceptance half-window on the p quadrature.
    double p_c = 0.3;

    /// Reference operating point: 10 km span (eta_sq rounded to 2/3), r = 1.61.
    static LinkParams operating_point() {
        return LinkParams{};
    }

    /// Throws LinkError(InvalidParameter) naming the first offending field.
    void validate() const;

    double eta() const;
    /// Displacement separating the branch peaks before loss: alpha*sin(theta).
    double d() const;
    /// Effective squeeze factor of the p quadrature at the detector.
    double r_prime() const;

    bool operator==(const LinkParams &) const = default;
};

enum class BranchLabel { B00 = 0, BEN = 1, B11 = 2 };

std::string_view branch_name(BranchLabel label) noexcept;

struct Branch {
    BranchLabel label;
    double weight;
    GaussianState probe;
};

/// 4x4 density matrix over |00>, |01>, |10>, |11>.
class QubitPairDensity {
   public:
    /// Checks Hermiticity, unit trace and positivity (all to 1e-12).
    explicit QubitPairDensity(const Eigen::Matrix4cd &rho);

    const Eigen::Matrix4cd &matrix() const noexcept {
        return rho_;
    }
    double trace() const noexcept {
        return rho_.trace().real();
    }
    Eigen::Vector4d eigenvalues() const;

   private:
    Eigen::Matrix4cd rho_;
};

/// Probe after interacting with one qubit: unchanged for bit 0, phase-shifted by -theta for bit 1.
GaussianState dispersive_kick(const GaussianState &probe, int qubit_bit, double theta);

/// Probe state reaching the detector when qubit A holds `bit_a` and qubit B holds `bit_b`.
GaussianState propagate_probe(const LinkParams &params, int bit_a, int bit_b);

/// The three distinguishable probe branches with weights (1/4, 1/2, 1/4), in label order.
std::array<Branch, 3> build_link_branches(const LinkParams &params);

/// (1/2)(|01><01| + zeta|01><10| + zeta|10><01| + |10><10|).
QubitPairDensity rho_en(double zeta);

/// <psi+|rho|psi+> with |psi+> = (|01> + |10>)/sqrt(2).
double fidelity_to_psi_plus(const QubitPairDensity &rho);

struct PostselectedState {
    QubitPairDensity rho;
    double p_s;
    /// In-window probability of each branch's p marginal, in label order.
    std::array<double, 3> window_mass;
};

/// Conditional two-qubit state after accepting |p| <= p_c, using the exact
/// branch covariances (squeeze-axis rotation included).
/// Throws LinkError(EmptyPostselection) when nothing is accepted.
PostselectedState postselected_state(const LinkParams &params);

}  // namespace sqlink

#endif

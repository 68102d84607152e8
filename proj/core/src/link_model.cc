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

#include "sqlink/link_model.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqlink/erf.h"
#include "sqlink/error.h"

namespace sqlink {

namespace {

void require(bool ok, const char *field, double value, const char *range) {
    if (!ok) {
        std::ostringstream ss;
        ss << "LinkParams: " << field << "=" << value << " must be " << range;
        throw LinkError(ErrorKind::InvalidParameter, ss.str());
    }
}

constexpr int kIndex01 = 1;
constexpr int kIndex10 = 2;

}  // namespace

void LinkParams::validate() const {
    require(std::isfinite(alpha) && alpha > 0, "alpha", alpha, "> 0");
    require(std::isfinite(r) && r >= 0 && r <= kMaxSqueezeFactor, "r", r, "in [0, 10]");
    require(std::isfinite(theta) && theta >= 0 && theta < std::numbers::pi / 4, "theta", theta, "in [0, pi/4)");
    require(std::isfinite(eta_sq) && eta_sq > 0 && eta_sq <= 1, "eta_sq", eta_sq, "in (0, 1]");
    require(std::isfinite(zeta) && zeta >= 0 && zeta <= 1, "zeta", zeta, "in [0, 1]");
    require(!std::isnan(p_c) && p_c >= 0, "p_c", p_c, ">= 0");
}

double LinkParams::eta() const {
    return std::sqrt(eta_sq);
}

double LinkParams::d() const {
    return alpha * std::sin(theta);
}

double LinkParams::r_prime() const {
    // Same composition as apply_loss on the squeezed quadrature.
    double var_ratio = eta_sq * std::exp(-2 * r) + (1 - eta_sq);
    return -0.5 * std::log(var_ratio);
}

std::string_view branch_name(BranchLabel label) noexcept {
    switch (label) {
        case BranchLabel::B00:
            return "B00";
        case BranchLabel::BEN:
            return "BEN";
        case BranchLabel::B11:
            return "B11";
    }
    return "?";
}

QubitPairDensity::QubitPairDensity(const Eigen::Matrix4cd &rho) : rho_(rho) {
    if (!rho.allFinite()) {
        throw LinkError(ErrorKind::NonPhysicalState, "QubitPairDensity: non-finite entries");
    }
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw LinkError(ErrorKind::NonPhysicalState, "QubitPairDensity: matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1) > 1e-12 || std::abs(rho.trace().imag()) > 1e-12) {
        throw LinkError(ErrorKind::NonPhysicalState, "QubitPairDensity: trace is not 1");
    }
    if (eigenvalues().minCoeff() < -1e-12) {
        throw LinkError(ErrorKind::NonPhysicalState, "QubitPairDensity: matrix is not positive semidefinite");
    }
}

Eigen::Vector4d QubitPairDensity::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

GaussianState dispersive_kick(const GaussianState &probe, int qubit_bit, double theta) {
    if (qubit_bit != 0 && qubit_bit != 1) {
        throw LinkError(ErrorKind::InvalidParameter, "dispersive_kick: qubit_bit must be 0 or 1");
    }
    if (qubit_bit == 0) {
        return probe;
    }
    return apply_phase_shift(probe, -theta);
}

GaussianState propagate_probe(const LinkParams &params, int bit_a, int bit_b) {
    params.validate();
    GaussianState probe = to_gaussian(make_squeezed(params.alpha, params.r, std::numbers::pi / 2));
    probe = dispersive_kick(probe, bit_a, params.theta);
    probe = apply_loss(probe, params.eta());
    probe = dispersive_kick(probe, bit_b, params.theta);
    return apply_phase_shift(probe, params.theta);
}

std::array<Branch, 3> build_link_branches(const LinkParams &params) {
    // |01> and |10> leave identical probes (isotropic loss commutes with rotation),
    // so the entangled branch carries both halves of the weight.
    return {
        Branch{BranchLabel::B00, 0.25, propagate_probe(params, 0, 0)},
        Branch{BranchLabel::BEN, 0.5, propagate_probe(params, 0, 1)},
        Branch{BranchLabel::B11, 0.25, propagate_probe(params, 1, 1)},
    };
}

QubitPairDensity rho_en(double zeta) {
    if (!(std::abs(zeta) <= 1)) {
        std::ostringstream ss;
        ss << "rho_en: |zeta|=" << std::abs(zeta) << " > 1 gives a non-positive density matrix";
        throw LinkError(ErrorKind::NonPhysicalState, ss.str());
    }
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(kIndex01, kIndex01) = 0.5;
    rho(kIndex10, kIndex10) = 0.5;
    rho(kIndex01, kIndex10) = 0.5 * zeta;
    rho(kIndex10, kIndex01) = 0.5 * zeta;
    return QubitPairDensity(rho);
}

double fidelity_to_psi_plus(const QubitPairDensity &rho) {
    const Eigen::Matrix4cd &m = rho.matrix();
    double overlap = 0.5 * (m(kIndex01, kIndex01) + m(kIndex10, kIndex10) + m(kIndex01, kIndex10) + m(kIndex10, kIndex01)).real();
    return std::clamp(overlap, 0.0, 1.0);
}

PostselectedState postselected_state(const LinkParams &params) {
    auto branches = build_link_branches(params);
    std::array<double, 3> mass{};
    double p_s = 0;
    for (size_t k = 0; k < branches.size(); ++k) {
        Marginal m = homodyne_p_marginal(branches[k].probe);
        mass[k] = gaussian_window_mass(m.mean, m.variance, params.p_c);
        p_s += branches[k].weight * mass[k];
    }
    if (!(p_s > 0)) {
        throw LinkError(ErrorKind::EmptyPostselection, "postselected_state: no probability inside the window");
    }

    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(0, 0) = branches[0].weight * mass[0];
    rho(3, 3) = branches[2].weight * mass[2];
    rho += branches[1].weight * mass[1] * rho_en(params.zeta).matrix();
    rho /= p_s;
    return PostselectedState{QubitPairDensity(rho), p_s, mass};
}

}  // namespace sqlink

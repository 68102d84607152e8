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

#include "sqlink/gaussian.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sqlink/error.h"

namespace sqlink {

namespace {

constexpr double kMinDet = kVacuumVariance * kVacuumVariance;

[[noreturn]] void fail(ErrorKind kind, const std::string &msg) {
    throw LinkError(kind, msg);
}

}  // namespace

std::string_view error_kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameter:
            return "invalid-parameter";
        case ErrorKind::AntiSqueezedQuadrature:
            return "anti-squeezed-quadrature";
        case ErrorKind::NonPhysicalState:
            return "non-physical-state";
        case ErrorKind::EmptyPostselection:
            return "empty-postselection";
        case ErrorKind::IndeterminateFidelity:
            return "indeterminate-fidelity";
    }
    return "unknown";
}

SqueezedState make_squeezed(std::complex<double> alpha, double r, double phi) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        fail(ErrorKind::InvalidParameter, "make_squeezed: alpha must be finite");
    }
    if (!std::isfinite(phi)) {
        fail(ErrorKind::InvalidParameter, "make_squeezed: phi must be finite");
    }
    if (!std::isfinite(r) || r < 0 || r > kMaxSqueezeFactor) {
        std::ostringstream ss;
        ss << "make_squeezed: squeeze factor r=" << r << " outside [0, " << kMaxSqueezeFactor << "]";
        fail(ErrorKind::InvalidParameter, ss.str());
    }
    constexpr double two_pi = 2 * std::numbers::pi;
    double reduced = std::fmod(phi, two_pi);
    if (reduced < 0) {
        reduced += two_pi;
    }
    if (reduced >= two_pi) {
        reduced = 0;
    }
    return SqueezedState{alpha, r, reduced};
}

GaussianState::GaussianState(const Eigen::Vector2d &mean, const Eigen::Matrix2d &cov) : mean_(mean), cov_(cov) {
    if (!mean.allFinite() || !cov.allFinite()) {
        fail(ErrorKind::InvalidParameter, "GaussianState: non-finite moments");
    }
    double scale = std::max(std::abs(cov(0, 1)), std::abs(cov(1, 0)));
    if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12 * std::max(1.0, scale)) {
        fail(ErrorKind::NonPhysicalState, "GaussianState: covariance is not symmetric");
    }
    cov_(1, 0) = cov_(0, 1);
    if (cov_(0, 0) <= 0 || cov_(1, 1) <= 0 || cov_.determinant() <= 0) {
        fail(ErrorKind::NonPhysicalState, "GaussianState: covariance is not positive definite");
    }
    double slack = 1e-12 * std::max(kMinDet, cov_(0, 0) * cov_(1, 1));
    if (cov_.determinant() < kMinDet - slack) {
        std::ostringstream ss;
        ss << "GaussianState: det(cov)=" << cov_.determinant() << " violates the uncertainty bound 1/16";
        fail(ErrorKind::NonPhysicalState, ss.str());
    }
}

GaussianState GaussianState::vacuum() {
    return GaussianState(Unchecked{}, Eigen::Vector2d::Zero(), kVacuumVariance * Eigen::Matrix2d::Identity());
}

bool GaussianState::is_pure(double tol) const noexcept {
    return std::abs(det() - kMinDet) <= tol * kMinDet;
}

Eigen::Matrix2d rotation(double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    Eigen::Matrix2d m;
    m << c, -s, s, c;
    return m;
}

GaussianState to_gaussian(const SqueezedState &s) {
    double squeezed = kVacuumVariance * std::exp(-2 * s.r);
    double stretched = kVacuumVariance * std::exp(2 * s.r);
    double c = std::cos(s.phi);
    double sn = std::sin(s.phi);
    Eigen::Matrix2d cov;
    cov(0, 0) = c * c * squeezed + sn * sn * stretched;
    cov(1, 1) = sn * sn * squeezed + c * c * stretched;
    cov(0, 1) = cov(1, 0) = c * sn * (squeezed - stretched);
    return GaussianState(Eigen::Vector2d(s.alpha.real(), s.alpha.imag()), cov);
}

GaussianState apply_phase_shift(const GaussianState &g, double theta) {
    Eigen::Matrix2d rot = rotation(theta);
    Eigen::Matrix2d cov = rot * g.cov() * rot.transpose();
    cov(1, 0) = cov(0, 1);
    return GaussianState(GaussianState::Unchecked{}, rot * g.mean(), cov);
}

GaussianState apply_loss(const GaussianState &g, double eta) {
    if (!(eta > 0 && eta <= 1)) {
        std::ostringstream ss;
        ss << "apply_loss: transmission eta=" << eta << " outside (0, 1]";
        fail(ErrorKind::InvalidParameter, ss.str());
    }
    double t = eta * eta;
    Eigen::Matrix2d cov = t * g.cov() + (1 - t) * kVacuumVariance * Eigen::Matrix2d::Identity();
    return GaussianState(GaussianState::Unchecked{}, eta * g.mean(), cov);
}

double effective_squeeze_param(const GaussianState &g) {
    double var_p = g.cov()(1, 1);
    if (var_p > kVacuumVariance * (1 + 1e-12)) {
        std::ostringstream ss;
        ss << "effective_squeeze_param: var(p)=" << var_p << " exceeds the vacuum level";
        fail(ErrorKind::AntiSqueezedQuadrature, ss.str());
    }
    return std::max(0.0, -0.5 * std::log(var_p / kVacuumVariance));
}

double wigner_value(const GaussianState &g, double x, double p) {
    Eigen::Vector2d delta(x - g.mean()(0), p - g.mean()(1));
    double det = g.det();
    double quad = delta.dot(g.cov().inverse() * delta);
    return std::exp(-0.5 * quad) / (2 * std::numbers::pi * std::sqrt(det));
}

Marginal homodyne_p_marginal(const GaussianState &g) {
    return Marginal{g.mean()(1), g.cov()(1, 1)};
}

double mean_photon_number(const SqueezedState &s) {
    double sh = std::sinh(s.r);
    return std::norm(s.alpha) + sh * sh;
}

double photon_number_variance(const SqueezedState &s, double theta_alpha) {
    double sh = std::sinh(s.r);
    double ch = std::cosh(s.r);
    double c = std::cos(theta_alpha - s.phi);
    double sn = std::sin(theta_alpha - s.phi);
    return 2 * sh * sh * ch * ch + std::norm(s.alpha) * (std::exp(-2 * s.r) * c * c + std::exp(2 * s.r) * sn * sn);
}

// With V the covariance in these units (vacuum = I/4) and m the mean:
//   <n>    = tr V + |m|^2 - 1/2
//   Var(n) = 2 tr(V^2) - 1/4 + 4 m^T V m
double mean_photon_number(const GaussianState &g) {
    return g.cov().trace() + g.mean().squaredNorm() - 0.5;
}

double photon_number_variance(const GaussianState &g) {
    const Eigen::Matrix2d &v = g.cov();
    return 2 * (v * v).trace() - 0.25 + 4 * g.mean().dot(v * g.mean());
}

}  // namespace sqlink

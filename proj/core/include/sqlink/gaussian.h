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

#ifndef SQLINK_GAUSSIAN_H
#define SQLINK_GAUSSIAN_H

#include <Eigen/Dense>
#include <complex>

/// Single-mode Gaussian states of the probe pulse.
///
/// Phase-space convention used throughout the library:
///   x = Re<a>, p = Im<a>,
///   vacuum covariance = (1/4) * Identity,
///   a squeeze factor r along angle phi gives variance e^{-2r}/4 on the
///   quadrature x*cos(phi) + p*sin(phi) and e^{+2r}/4 on the orthogonal one.
/// With phi = pi/2 (the probe's standing choice, epsilon = r*e^{i*pi}) the
/// homodyned p quadrature is the squeezed one.
namespace sqlink {

constexpr double kVacuumVariance = 0.25;
constexpr double kMaxSqueezeFactor = 10.0;

struct SqueezedState {
    std::complex<double> alpha;
    double r;
    /// Squeeze phase, reduced to [0, 2*pi). The complex squeeze parameter is r*e^{2i*phi}.
    double phi;
};

/// Validates and normalizes. Throws LinkError(InvalidParameter) for r outside
/// [0, kMaxSqueezeFactor] or any non-finite input.
SqueezedState make_squeezed(std::complex<double> alpha, double r, double phi);

/// Mean quadrature vector and covariance of a (possibly mixed) single-mode Gaussian state.
class GaussianState {
   public:
    /// Checks symmetry, positive definiteness and det(cov) >= 1/16 (relative slack 1e-12).
    GaussianState(const Eigen::Vector2d &mean, const Eigen::Matrix2d &cov);

    static GaussianState vacuum();

    const Eigen::Vector2d &mean() const noexcept {
        return mean_;
    }
    const Eigen::Matrix2d &cov() const noexcept {
        return cov_;
    }
    double det() const noexcept {
        return cov_.determinant();
    }
    /// det(cov) == 1/16 up to relative tolerance `tol`.
    bool is_pure(double tol = 1e-9) const noexcept;

   private:
    struct Unchecked {};
    GaussianState(Unchecked, const Eigen::Vector2d &mean, const Eigen::Matrix2d &cov) : mean_(mean), cov_(cov) {}
    friend GaussianState apply_phase_shift(const GaussianState &, double);
    friend GaussianState apply_loss(const GaussianState &, double);

    Eigen::Vector2d mean_;
    Eigen::Matrix2d cov_;
};

/// 2x2 rotation by `angle`.
Eigen::Matrix2d rotation(double angle);

GaussianState to_gaussian(const SqueezedState &s);

/// Rotates the mean and covariance by R(theta): a -> a*e^{i*theta}.
GaussianState apply_phase_shift(const GaussianState &g, double theta);

/// Pure-loss channel with amplitude transmission `eta` in (0, 1]:
/// mean -> eta*mean, cov -> eta^2*cov + (1 - eta^2)/4 * I.
GaussianState apply_loss(const GaussianState &g, double eta);

/// Squeeze factor of the pure state whose p-variance equals that of `g`.
/// Only meaningful for the p marginal; the x variance of a lossy state is not e^{2r'}/4.
double effective_squeeze_param(const GaussianState &g);

/// Normalized Wigner density at (x, p).
double wigner_value(const GaussianState &g, double x, double p);

struct Marginal {
    double mean;
    double variance;
};

/// Distribution of the homodyned p quadrature (the Wigner function integrated over x).
Marginal homodyne_p_marginal(const GaussianState &g);

/// |alpha|^2 + sinh^2(r).
double mean_photon_number(const SqueezedState &s);

/// Number variance of a squeezed state whose amplitude has phase `theta_alpha`:
///   2 sinh^2 r cosh^2 r + |alpha|^2 [e^{-2r} cos^2(theta - phi) + e^{2r} sin^2(theta - phi)].
double photon_number_variance(const SqueezedState &s, double theta_alpha);

/// Photon-number moments computed from the covariance formalism. Valid for
/// mixed states too; agrees with the closed forms above on pure states.
double mean_photon_number(const GaussianState &g);
double photon_number_variance(const GaussianState &g);

}  // namespace sqlink

#endif

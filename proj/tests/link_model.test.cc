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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.h"
#include "sqlink/error.h"

using namespace sqlink;

namespace {

const double kEta = std::sqrt(2.0 / 3.0);

Eigen::Matrix4cd psi_plus_projector() {
    Eigen::Vector4cd v(0, 1, 1, 0);
    v /= std::sqrt(2.0);
    return v * v.adjoint();
}

// Exact-covariance figures at the default operating point, frozen from a
// 30-digit evaluation of the Gaussian CDF on the rotated branch variances.
constexpr double kExactPs = 0.3441631851413638;
constexpr double kExactF = 0.9893604057889881;

}  // namespace

TEST(LinkParams, defaults_and_derived) {
    LinkParams p = LinkParams::operating_point();
    EXPECT_EQ(p.alpha, 150);
    EXPECT_EQ(p.r, 1.61);
    EXPECT_EQ(p.theta, 0.00867);
    EXPECT_EQ(p.eta_sq, 2.0 / 3.0);
    EXPECT_EQ(p.zeta, 0.995);
    EXPECT_EQ(p.p_c, 0.3);
    EXPECT_NEAR(p.d(), 1.30, 0.005);
    EXPECT_NEAR(p.r_prime(), 0.511, 0.001);
    EXPECT_NEAR(p.eta(), kEta, 1e-16);

    p.alpha = 300;
    EXPECT_NEAR(p.d(), 2 * 1.3004837072021609, 1e-12);
}

TEST(LinkParams, validation) {
    auto bad = [](auto mutate) {
        LinkParams p;
        mutate(p);
        try {
            p.validate();
        } catch (const LinkError &e) {
            return e.kind() == ErrorKind::InvalidParameter;
        }
        return false;
    };
    EXPECT_TRUE(bad([](LinkParams &p) { p.alpha = 0; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.r = -1; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.theta = -0.1; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.theta = std::numbers::pi / 4; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.eta_sq = 0; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.eta_sq = 1.5; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.zeta = 1.01; }));
    EXPECT_TRUE(bad([](LinkParams &p) { p.p_c = -0.1; }));
    EXPECT_NO_THROW(LinkParams{}.validate());
}

TEST(DispersiveKick, identity_cases) {
    GaussianState g = to_gaussian(make_squeezed(150, 1.61, std::numbers::pi / 2));
    GaussianState zero_bit = dispersive_kick(g, 0, 0.00867);
    EXPECT_EQ(zero_bit.mean(), g.mean());
    EXPECT_EQ(zero_bit.cov(), g.cov());
    GaussianState no_phase = dispersive_kick(g, 1, 0);
    EXPECT_EQ(no_phase.mean(), g.mean());
    EXPECT_EQ(no_phase.cov(), g.cov());
    EXPECT_THROW(dispersive_kick(g, 2, 0.1), LinkError);
}

TEST(DispersiveKick, rotates_by_minus_theta) {
    GaussianState g = to_gaussian(make_squeezed(150, 1.61, std::numbers::pi / 2));
    GaussianState kicked = dispersive_kick(g, 1, 0.00867);
    EXPECT_NEAR(kicked.mean()(1), -150 * std::sin(0.00867), 1e-12);
    EXPECT_NEAR(kicked.mean()(1), -1.30, 0.005);
    EXPECT_NEAR(kicked.mean().norm(), 150, 1e-12);
}

TEST(Branches, weights_and_means) {
    auto branches = build_link_branches(LinkParams::operating_point());
    EXPECT_EQ(branches[0].label, BranchLabel::B00);
    EXPECT_EQ(branches[1].label, BranchLabel::BEN);
    EXPECT_EQ(branches[2].label, BranchLabel::B11);
    EXPECT_EQ(branches[0].weight + branches[1].weight + branches[2].weight, 1.0);
    EXPECT_EQ(branches[1].weight, 0.5);

    auto en = homodyne_p_marginal(branches[1].probe);
    EXPECT_NEAR(en.mean, 0, 1e-15);
    EXPECT_NEAR(en.variance, std::exp(-2 * LinkParams{}.r_prime()) / 4, 1e-15);
    EXPECT_NEAR(en.variance, std::exp(-2 * 0.511) / 4, 1e-4);

    double p00 = branches[0].probe.mean()(1);
    double p11 = branches[2].probe.mean()(1);
    EXPECT_NEAR(p00, kEta * 1.3004837072021609, 1e-12);
    EXPECT_NEAR(p00, 1.0617, 5e-4);
    EXPECT_NEAR(p00 + p11, 0, 1e-12);
}

TEST(Branches, entangled_halves_coincide) {
    LinkParams p;
    GaussianState a = propagate_probe(p, 0, 1);
    GaussianState b = propagate_probe(p, 1, 0);
    EXPECT_LE((a.mean() - b.mean()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((a.cov() - b.cov()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Branches, keep_squeeze_axis_tilt) {
    auto branches = build_link_branches(LinkParams{});
    // B00/B11 are rotated by +-theta, so their p variance picks up a sliver of the anti-squeezed x variance.
    double en_var = branches[1].probe.cov()(1, 1);
    EXPECT_GT(branches[0].probe.cov()(1, 1), en_var);
    EXPECT_NEAR(branches[0].probe.cov()(1, 1), branches[2].probe.cov()(1, 1), 1e-15);
    EXPECT_NEAR(branches[0].probe.cov()(0, 1), -branches[2].probe.cov()(0, 1), 1e-15);
}

TEST(Branches, zero_theta_makes_branches_identical) {
    LinkParams p;
    p.theta = 0;
    auto branches = build_link_branches(p);
    for (const Branch &b : branches) {
        EXPECT_EQ(b.probe.mean(), branches[1].probe.mean());
        EXPECT_EQ(b.probe.cov(), branches[1].probe.cov());
    }
}

TEST(RhoEn, limits_and_spectrum) {
    QubitPairDensity pure = rho_en(1);
    EXPECT_LE((pure.matrix() - psi_plus_projector()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(fidelity_to_psi_plus(pure), 1, 1e-15);

    QubitPairDensity mixed = rho_en(0);
    EXPECT_NEAR(fidelity_to_psi_plus(mixed), 0.5, 1e-15);

    QubitPairDensity nominal = rho_en(0.995);
    EXPECT_NEAR(fidelity_to_psi_plus(nominal), 0.9975, 1e-15);
    Eigen::Vector4d ev = nominal.eigenvalues();
    EXPECT_NEAR(ev(0), 0, 1e-15);
    EXPECT_NEAR(ev(1), 0, 1e-15);
    EXPECT_NEAR(ev(2), (1 - 0.995) / 2, 1e-15);
    EXPECT_NEAR(ev(3), (1 + 0.995) / 2, 1e-15);
}

TEST(RhoEn, rejects_nonphysical_coherence) {
    try {
        rho_en(1.2);
        FAIL();
    } catch (const LinkError &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonPhysicalState);
    }
}

TEST(Fidelity, basis_states) {
    Eigen::Matrix4cd zero = Eigen::Matrix4cd::Zero();
    zero(0, 0) = 1;
    EXPECT_EQ(fidelity_to_psi_plus(QubitPairDensity(zero)), 0);
    EXPECT_NEAR(fidelity_to_psi_plus(QubitPairDensity(psi_plus_projector())), 1, 1e-15);
}

TEST(QubitPairDensity, validation) {
    Eigen::Matrix4cd not_unit = 0.5 * Eigen::Matrix4cd::Identity();
    EXPECT_THROW(QubitPairDensity{not_unit}, LinkError);
    Eigen::Matrix4cd negative = Eigen::Matrix4cd::Zero();
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    EXPECT_THROW(QubitPairDensity{negative}, LinkError);
    Eigen::Matrix4cd non_hermitian = 0.25 * Eigen::Matrix4cd::Identity();
    non_hermitian(0, 1) = {0, 0.1};
    EXPECT_THROW(QubitPairDensity{non_hermitian}, LinkError);
}

TEST(Postselection, default_operating_point) {
    PostselectedState s = postselected_state(LinkParams::operating_point());
    EXPECT_NEAR(s.p_s, 0.344, 0.001);
    EXPECT_NEAR(s.p_s, kExactPs, 1e-13);
    EXPECT_NEAR(fidelity_to_psi_plus(s.rho), kExactF, 1e-13);
    EXPECT_NEAR(s.rho.trace(), 1, 1e-12);
    EXPECT_GE(s.rho.eigenvalues().minCoeff(), -1e-12);
}

TEST(Postselection, exact_path_against_simpson_oracle) {
    LinkParams p;
    auto branches = build_link_branches(p);
    double ps = 0;
    for (const Branch &b : branches) {
        auto m = homodyne_p_marginal(b.probe);
        ps += b.weight * sqlink::testing::window_mass_simpson(m.mean, m.variance, p.p_c);
    }
    EXPECT_NEAR(postselected_state(p).p_s, ps, 1e-12);
}

TEST(Postselection, full_window_is_prior_mixture) {
    LinkParams p;
    p.p_c = 1e9;
    PostselectedState s = postselected_state(p);
    EXPECT_NEAR(s.p_s, 1, 1e-15);
    EXPECT_NEAR(s.rho.matrix()(0, 0).real(), 0.25, 1e-15);
    EXPECT_NEAR(s.rho.matrix()(3, 3).real(), 0.25, 1e-15);
    EXPECT_NEAR(s.rho.matrix()(1, 1).real(), 0.25, 1e-15);
    EXPECT_NEAR(s.rho.matrix()(1, 2).real(), 0.25 * p.zeta, 1e-15);
    EXPECT_NEAR(fidelity_to_psi_plus(s.rho), (1 + p.zeta) / 4, 1e-15);
}

TEST(Postselection, perfect_coherence_scales_fidelity) {
    LinkParams p;
    p.zeta = 1;
    double f1 = fidelity_to_psi_plus(postselected_state(p).rho);
    double f0995 = fidelity_to_psi_plus(postselected_state(LinkParams{}).rho);
    EXPECT_NEAR(f1, f0995 * 2 / 1.995, 1e-14);
    // Closed-form value 0.98946.../0.9975.
    EXPECT_NEAR(f1, 0.9919, 2e-4);
}

TEST(Postselection, empty_window_is_an_error) {
    LinkParams p;
    p.p_c = 0;
    try {
        postselected_state(p);
        FAIL();
    } catch (const LinkError &e) {
        EXPECT_EQ(e.kind(), ErrorKind::EmptyPostselection);
    }
}

TEST(Postselection, zero_theta_gives_quarter_plus_zeta_over_four) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 50; ++i) {
        LinkParams p = sqlink::testing::random_link_params(rng);
        p.theta = 0;
        EXPECT_NEAR(fidelity_to_psi_plus(postselected_state(p).rho), (1 + p.zeta) / 4, 1e-12);
    }
}

TEST(Postselection, mirror_symmetry) {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 50; ++i) {
        LinkParams p = sqlink::testing::random_link_params(rng);
        PostselectedState s = postselected_state(p);
        // Relabelling 0 <-> 1 swaps |00> and |11>; B00 and B11 carry equal window mass.
        EXPECT_NEAR(s.window_mass[0], s.window_mass[2], 1e-12);
        Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
        swap(0, 3) = swap(3, 0) = swap(1, 2) = swap(2, 1) = 1;
        Eigen::Matrix4cd mirrored = swap * s.rho.matrix() * swap;
        QubitPairDensity m(mirrored);
        EXPECT_NEAR(fidelity_to_psi_plus(m), fidelity_to_psi_plus(s.rho), 1e-12);
        EXPECT_LE((mirrored - s.rho.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Postselection, outputs_are_valid_density_matrices) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 100; ++i) {
        PostselectedState s = postselected_state(sqlink::testing::random_link_params(rng));
        EXPECT_NEAR(s.rho.trace(), 1, 1e-12);
        EXPECT_GE(s.rho.eigenvalues().minCoeff(), -1e-12);
        EXPECT_GT(s.p_s, 0);
        EXPECT_LE(s.p_s, 1);
    }
}

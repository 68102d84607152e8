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


// Acceptance gate: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "oracles.h"
#include "sqlink/analytic.h"
#include "sqlink/erf.h"
#include "sqlink/gaussian.h"
#include "sqlink/link_model.h"
#include "sqlink/montecarlo.h"
#include "sqlink/sweep.h"

using namespace sqlink;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

struct Criterion {
    int id;
    std::string name;
    double budget_ms;
    std::function<Outcome()> check;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

double rel(double a, double b) {
    return std::abs(a - b) / std::abs(b);
}

Outcome reference_values() {
    LinkParams p = LinkParams::operating_point();
    double ps = success_probability(p);
    double f = average_fidelity(p);
    bool ok = std::abs(ps - 0.344) <= 0.001 && std::abs(f - 0.989) <= 0.001;
    return {ok, fmt("P_s=%.6f F=%.6f", ps, f)};
}

Outcome loss_composition() {
    GaussianState probe = to_gaussian(make_squeezed(150, 1.61, std::numbers::pi / 2));
    double rp = effective_squeeze_param(apply_loss(probe, std::sqrt(2.0 / 3.0)));
    return {std::abs(rp - 0.511) <= 0.001, fmt("r'=%.6f", rp)};
}

Outcome displacement() {
    double d = LinkParams::operating_point().d();
    return {std::abs(d - 1.30) <= 0.005, fmt("d=%.6f", d)};
}

Outcome window_tradeoff() {
    auto rows = run_sweep(SweepSpec::fig2(LinkParams::operating_point()));
    bool monotone = rows.size() == 50;
    for (size_t i = 1; i < rows.size(); ++i) {
        monotone = monotone && rows[i].figures.p_s > rows[i - 1].figures.p_s &&
                   rows[i].figures.fidelity < rows[i - 1].figures.fidelity;
    }
    LinkParams wide = LinkParams::operating_point();
    wide.p_c = 50;
    double ps = success_probability(wide);
    double f = average_fidelity(wide);
    double f_limit = (1 + wide.zeta) / 4;
    bool limits = std::abs(ps - 1) <= 1e-9 && std::abs(f - f_limit) <= 1e-9;
    return {monotone && limits, fmt("%zu points monotone=%s; p_c=50: |P_s-1|=%.1e |F-(1+zeta)/4|=%.1e", rows.size(),
                                    monotone ? "yes" : "no", std::abs(ps - 1), std::abs(f - f_limit))};
}

Outcome deterministic_oracles() {
    std::mt19937_64 rng(2026);
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        LinkParams p = sqlink::testing::random_link_params(rng);
        QuadratureFigures q = quadrature_figures(p);
        LinkFigures f = link_figures(p);
        worst = std::max({worst, rel(q.p_s, f.p_s), rel(q.fidelity, f.fidelity)});
    }
    LinkParams p = LinkParams::operating_point();
    QuadratureFigures exact = exact_quadrature_figures(p);
    LinkFigures closed = link_figures(p);
    double exact_ps = rel(exact.p_s, closed.p_s);
    double exact_f = rel(exact.fidelity, closed.fidelity);
    bool ok = worst <= 1e-10 && exact_ps <= 1e-4 && exact_f <= 1e-4;
    return {ok, fmt("effective model worst rel=%.2e (<=1e-10); exact-covariance rel P_s=%.3e F=%.3e (<=1e-4)", worst,
                    exact_ps, exact_f)};
}

Outcome stochastic_oracle() {
    LinkParams p = LinkParams::operating_point();
    LinkEstimate a = estimate_link(p, 1000000, 1);
    LinkEstimate b = estimate_link(p, 1000000, 1);
    LinkFigures f = link_figures(p);
    double zp = (a.p_s_hat - f.p_s) / a.std_err_ps;
    double zf = (a.fidelity_hat - f.fidelity) / a.std_err_f;
    bool identical = a.accepted == b.accepted && a.drawn == b.drawn && a.p_s_hat == b.p_s_hat &&
                     a.fidelity_hat == b.fidelity_hat && a.std_err_ps == b.std_err_ps && a.std_err_f == b.std_err_f;
    bool ok = std::abs(zp) <= 4 && std::abs(zf) <= 4 && identical;
    return {ok, fmt("p_hat=%.6f (z=%+.2f) F_hat=%.6f (z=%+.2f) repeat bit-identical=%s", a.p_s_hat, zp, a.fidelity_hat,
                    zf, identical ? "yes" : "no")};
}

Outcome gaussian_properties() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    double kPi = std::numbers::pi;

    double worst_phase = 0;
    double worst_compose = 0;
    bool physical = true;
    for (int i = 0; i < 500; ++i) {
        double amp = 5 * u(rng);
        double phase = 2 * kPi * u(rng);
        SqueezedState s = make_squeezed(std::polar(amp, phase), 1.5 * u(rng), 2 * kPi * u(rng));
        double theta = 2 * kPi * u(rng) - kPi;
        SqueezedState turned = make_squeezed(s.alpha * std::polar(1.0, theta), s.r, s.phi + theta);
        double n0 = mean_photon_number(s);
        double v0 = photon_number_variance(s, phase);
        worst_phase = std::max({worst_phase, std::abs(mean_photon_number(turned) - n0) / std::max(1.0, n0),
                                std::abs(photon_number_variance(turned, phase + theta) - v0) / std::max(1.0, v0)});

        GaussianState g = to_gaussian(s);
        GaussianState h = apply_phase_shift(g, theta);
        worst_phase = std::max({worst_phase, std::abs(mean_photon_number(h) - mean_photon_number(g)) / std::max(1.0, n0),
                                std::abs(photon_number_variance(h) - photon_number_variance(g)) / std::max(1.0, v0)});

        double e1 = 0.05 + 0.95 * u(rng);
        double e2 = 0.05 + 0.95 * u(rng);
        GaussianState twice = apply_loss(apply_loss(g, e1), e2);
        GaussianState once = apply_loss(g, e1 * e2);
        worst_compose = std::max({worst_compose,
                                  (twice.mean() - once.mean()).cwiseAbs().maxCoeff() / std::max(1.0, g.mean().norm()),
                                  (twice.cov() - once.cov()).cwiseAbs().maxCoeff() / std::max(1.0, g.cov().norm())});

        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(twice.cov());
        physical = physical && eig.eigenvalues().minCoeff() > 0 && twice.det() >= (1.0 / 16) * (1 - 1e-12) &&
                   h.det() >= (1.0 / 16) * (1 - 1e-12);
    }

    double worst_norm = 0;
    for (int i = 0; i < 4; ++i) {
        SqueezedState s = make_squeezed(std::polar(3 * u(rng), 2 * kPi * u(rng)), 1.5 * u(rng), 2 * kPi * u(rng));
        GaussianState g = apply_loss(to_gaussian(s), 0.2 + 0.8 * u(rng));
        worst_norm = std::max(worst_norm, std::abs(sqlink::testing::wigner_integral(g, 400) - 1));
    }

    double worst_erf = 0;
    for (int i = 0; i < 10000; ++i) {
        double x = -8 + 16.0 * i / 9999;
        worst_erf = std::max(worst_erf, std::abs(sqlink::erf(x) - static_cast<double>(sqlink::testing::erf_series(x))));
    }

    bool ok = worst_phase <= 1e-12 && worst_compose <= 1e-12 && physical && worst_norm <= 1e-6 && worst_erf <= 1e-14;
    return {ok, fmt("phase inv %.1e, loss composition %.1e, physical=%s, Wigner |norm-1| %.1e, erf %.1e",
                    worst_phase, worst_compose, physical ? "yes" : "no", worst_norm, worst_erf)};
}

Outcome fiber_law() {
    double eta_sq = eta_from_length(10, 0.17);
    double gap = std::abs(eta_sq - 2.0 / 3.0) / (2.0 / 3.0);
    return {std::abs(eta_sq - 0.6761) <= 1e-4 && gap <= 0.015,
            fmt("eta^2(10 km)=%.6f, gap to 2/3 = %.2f%%", eta_sq, 100 * gap)};
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "operating-point regression", 1, reference_values},
        {2, "loss composition r'", 1, loss_composition},
        {3, "displacement d", 1, displacement},
        {4, "window trade-off shape and limits", 50, window_tradeoff},
        {5, "deterministic oracle equivalence", 5000, deterministic_oracles},
        {6, "stochastic oracle equivalence", 10000, stochastic_oracle},
        {7, "gaussian-core properties", 60000, gaussian_properties},
        {8, "fiber law", 1, fiber_law},
    };

    int failed = 0;
    for (const Criterion &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        bool in_budget = ms <= c.budget_ms;
        bool pass = o.pass && in_budget;
        failed += pass ? 0 : 1;
        std::printf("%s  %d  %-36s %s  [%.3f ms, budget %.0f ms%s]\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                    o.detail.c_str(), ms, c.budget_ms, in_budget ? "" : ", over budget");
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

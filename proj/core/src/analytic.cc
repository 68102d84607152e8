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

#include "sqlink/analytic.h"

#include <cmath>
#include <numbers>

#include "sqlink/erf.h"
#include "sqlink/error.h"

namespace sqlink {

double b_coefficient(int s, double p_c, double eta, double d, double r_prime) {
    return std::numbers::sqrt2 * (p_c + s * eta * d) * std::exp(r_prime);
}

std::array<double, 3> b_coefficients(const LinkParams &params) {
    params.validate();
    double eta = params.eta();
    double d = params.d();
    double rp = params.r_prime();
    return {
        b_coefficient(-1, params.p_c, eta, d, rp),
        b_coefficient(0, params.p_c, eta, d, rp),
        b_coefficient(+1, params.p_c, eta, d, rp),
    };
}

namespace {

struct ErfTerms {
    double minus;
    double zero;
    double plus;
};

ErfTerms erf_terms(const std::array<double, 3> &b) {
    return {erf(b[0]), erf(b[1]), erf(b[2])};
}

double probability_from(const ErfTerms &e) {
    return e.zero / 2 + e.plus / 4 + e.minus / 4;
}

double fidelity_from(const ErfTerms &e, double zeta) {
    return e.zero * (1 + zeta) / (2 * e.zero + e.plus + e.minus);
}

void require_open_window(const LinkParams &params) {
    if (params.p_c == 0) {
        throw LinkError(ErrorKind::IndeterminateFidelity,
                        "average_fidelity: p_c = 0 is 0/0; use fidelity_zero_window_limit");
    }
}

}  // namespace

double success_probability(const LinkParams &params) {
    return probability_from(erf_terms(b_coefficients(params)));
}

double average_fidelity(const LinkParams &params) {
    auto b = b_coefficients(params);
    require_open_window(params);
    return fidelity_from(erf_terms(b), params.zeta);
}

double fidelity_zero_window_limit(const LinkParams &params) {
    params.validate();
    double shift = params.eta() * params.d() * std::exp(params.r_prime());
    return (1 + params.zeta) / (2 + 2 * std::exp(-2 * shift * shift));
}

LinkFigures link_figures(const LinkParams &params) {
    auto b = b_coefficients(params);
    require_open_window(params);
    ErfTerms e = erf_terms(b);
    return LinkFigures{probability_from(e), fidelity_from(e, params.zeta), b};
}

}  // namespace sqlink

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

#ifndef SQLINK_ANALYTIC_H
#define SQLINK_ANALYTIC_H

#include <array>

#include "sqlink/link_model.h"

/// Closed-form success probability and average fidelity of one link.
///
/// Every branch is treated as the effective pure squeezed state with factor r'
/// and the +-2*theta tilt of the squeeze axis is ignored. The in-window mass of
/// branch s is then expressed through
///   b_s = sqrt(2) * (p_c + s*eta*d) * exp(r'),   s in {-1, 0, +1}.
/// The exponent in b_s is identified with r'; this is the reading that
/// reproduces P_s = 0.344 and F = 0.989 at the default operating point.
namespace sqlink {

struct LinkFigures {
    double p_s;
    double fidelity;
    /// (b_{-1}, b_0, b_{+1}).
    std::array<double, 3> b;
};

double b_coefficient(int s, double p_c, double eta, double d, double r_prime);

/// (b_{-1}, b_0, b_{+1}) for `params`.
std::array<double, 3> b_coefficients(const LinkParams &params);

/// erf(b_0)/2 + erf(b_{+1})/4 + erf(b_{-1})/4. Zero for p_c = 0.
double success_probability(const LinkParams &params);

/// erf(b_0)(1 + zeta) / (2 erf(b_0) + erf(b_{+1}) + erf(b_{-1})).
/// Throws LinkError(IndeterminateFidelity) for p_c = 0; see fidelity_zero_window_limit.
double average_fidelity(const LinkParams &params);

/// Limit of average_fidelity as p_c -> 0+:
///   (1 + zeta) / (2 + 2 exp(-2 (eta d e^{r'})^2)).
double fidelity_zero_window_limit(const LinkParams &params);

LinkFigures link_figures(const LinkParams &params);

}  // namespace sqlink

#endif

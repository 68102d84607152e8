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

#include "sqlink/erf.h"

#include <array>
#include <cmath>

namespace sqlink {

namespace {

// W. J. Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients from the SPECFUN CALERF routine.
constexpr std::array<double, 5> kSmallNum = {
    3.16112374387056560e00, 1.13864154151050156e02, 3.77485237685302021e02,
    3.20937758913846947e03, 1.85777706184603153e-1};
constexpr std::array<double, 4> kSmallDen = {
    2.36012909523441209e01, 2.44024637934444173e02, 1.28261652607737228e03, 2.84423683343917062e03};

constexpr std::array<double, 9> kMidNum = {
    5.64188496988670089e-1, 8.88314979438837594e00, 6.61191906371416295e01,
    2.98635138197400131e02, 8.81952221241769090e02, 1.71204761263407058e03,
    2.05107837782607147e03, 1.23033935479799725e03, 2.15311535474403846e-8};
constexpr std::array<double, 8> kMidDen = {
    1.57449261107098347e01, 1.17693950891312499e02, 5.37181101862009858e02, 1.62138957456669019e03,
    3.29079923573345963e03, 4.36261909014324716e03, 3.43936767414372164e03, 1.23033935480374942e03};

constexpr std::array<double, 6> kTailNum = {
    3.05326634961232344e-1, 3.60344899949804439e-1, 1.25781726111229246e-1,
    1.60837851487422766e-2, 6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kTailDen = {
    2.56852019228982242e00, 1.87295284992346047e00, 5.27905102951428412e-1,
    6.05183413124413191e-2, 2.33520497626869185e-3};

constexpr double kInvSqrtPi = 0.56418958354775628695;
constexpr double kSmallBreak = 0.46875;
constexpr double kXSmall = 1.11e-16;
// erfc underflows past this.
constexpr double kXBig = 26.543;

// erf(y) for 0 <= y <= 0.46875.
double erf_small(double y) {
    double ysq = y > kXSmall ? y * y : 0.0;
    double num = kSmallNum[4] * ysq;
    double den = ysq;
    for (int i = 0; i < 3; ++i) {
        num = (num + kSmallNum[i]) * ysq;
        den = (den + kSmallDen[i]) * ysq;
    }
    return y * (num + kSmallNum[3]) / (den + kSmallDen[3]);
}

// exp(-y^2) split as exp(-ysq^2)*exp(-del) to keep the product accurate for large y.
double scaled_gaussian(double y) {
    double ysq = std::trunc(y * 16.0) / 16.0;
    double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

// erfc(y) for y > 0.46875.
double erfc_positive(double y) {
    if (y <= 4.0) {
        double num = kMidNum[8] * y;
        double den = y;
        for (int i = 0; i < 7; ++i) {
            num = (num + kMidNum[i]) * y;
            den = (den + kMidDen[i]) * y;
        }
        return scaled_gaussian(y) * (num + kMidNum[7]) / (den + kMidDen[7]);
    }
    if (y >= kXBig) {
        return 0.0;
    }
    double ysq = 1.0 / (y * y);
    double num = kTailNum[5] * ysq;
    double den = ysq;
    for (int i = 0; i < 4; ++i) {
        num = (num + kTailNum[i]) * ysq;
        den = (den + kTailDen[i]) * ysq;
    }
    double result = ysq * (num + kTailNum[4]) / (den + kTailDen[4]);
    result = (kInvSqrtPi - result) / y;
    return scaled_gaussian(y) * result;
}

}  // namespace

double erf(double x) noexcept {
    if (std::isnan(x)) {
        return x;
    }
    double y = std::abs(x);
    double magnitude = y <= kSmallBreak ? erf_small(y) : (0.5 - erfc_positive(y)) + 0.5;
    return std::signbit(x) ? -magnitude : magnitude;
}

double erfc(double x) noexcept {
    if (std::isnan(x)) {
        return x;
    }
    double y = std::abs(x);
    if (y <= kSmallBreak) {
        return 1.0 - (std::signbit(x) ? -erf_small(y) : erf_small(y));
    }
    double tail = erfc_positive(y);
    return std::signbit(x) ? 2.0 - tail : tail;
}

double gaussian_window_mass(double mean, double variance, double half_width) noexcept {
    if (half_width <= 0) {
        return 0.0;
    }
    double scale = 1.0 / std::sqrt(2.0 * variance);
    double upper = (half_width - mean) * scale;
    double lower = (-half_width - mean) * scale;
    // Differences of erfc on the same side of zero avoid cancellation when the window sits in a tail.
    if (lower >= 0) {
        return 0.5 * (erfc(lower) - erfc(upper));
    }
    if (upper <= 0) {
        return 0.5 * (erfc(-upper) - erfc(-lower));
    }
    return 0.5 * (erf(upper) - erf(lower));
}

}  // namespace sqlink

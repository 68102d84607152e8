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

#ifndef SQLINK_ERF_H
#define SQLINK_ERF_H

namespace sqlink {

/// Error function, (2/sqrt(pi)) * integral_0^x e^{-t^2} dt.
///
/// Cody's rational Chebyshev approximations on |x| <= 0.46875, (0.46875, 4]
/// and (4, inf). Absolute error is below 1e-15 on doubles; erf(-x) == -erf(x)
/// bit for bit.
double erf(double x) noexcept;

/// Complementary error function 1 - erf(x), accurate in the tail.
double erfc(double x) noexcept;

/// Probability mass of N(mean, variance) on [-half_width, half_width].
double gaussian_window_mass(double mean, double variance, double half_width) noexcept;

}  // namespace sqlink

#endif

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

#ifndef SQLINK_SWEEP_H
#define SQLINK_SWEEP_H

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqlink/analytic.h"
#include "sqlink/link_model.h"
#include "sqlink/montecarlo.h"

namespace sqlink {

std::string_view version() noexcept;

constexpr double kFiberLossDbPerKm = 0.17;
constexpr double kFiberLightSpeed = 2e8;

/// Power transmittance 10^{-loss*L/10} of a fiber span.
double eta_from_length(double length_km, double loss_db_per_km = kFiberLossDbPerKm);

enum class SweepVariable { PC, EtaSq, R, Theta, Zeta, Alpha };

/// Column/flag name: "pc", "eta_sq", "r", "theta", "zeta", "alpha".
std::string_view sweep_variable_name(SweepVariable v) noexcept;
/// Accepts the column names plus "p_c", "p-c" and "eta-sq".
std::optional<SweepVariable> parse_sweep_variable(std::string_view name);

double get_field(const LinkParams &params, SweepVariable v);
void set_field(LinkParams &params, SweepVariable v, double value);

struct SweepSpec {
    SweepVariable variable = SweepVariable::PC;
    double start = 0.02;
    double stop = 1.0;
    double step = 0.02;
    LinkParams fixed;

    /// Default p_c grid for the P_s / F window trade-off: 0.02..1.0 in steps of 0.02.
    static SweepSpec fig2(const LinkParams &fixed);

    /// start <= stop, step > 0 and every grid point a valid LinkParams.
    void validate() const;
    /// start + i*step for i = 0.., up to stop (1e-9 relative slack on the last point),
    /// each point rounded to 12 significant digits.
    std::vector<double> grid() const;
};

struct SweepRow {
    double value;
    LinkFigures figures;
    double r_prime;
    double d;
};

/// Rows in grid order. `workers` > 1 evaluates points concurrently; output order is unchanged.
std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned workers = 1);

/// Header "pc,ps,fidelity" (fig2 layout) or the full layout
/// "<var>,ps,fidelity,r_prime,d,b_minus,b_zero,b_plus".
std::string format_sweep_csv(const std::vector<SweepRow> &rows, SweepVariable v, bool full_columns);

/// gnuplot script drawing P_s and F against the swept variable from `csv_path`.
std::string plot_script(std::string_view csv_path, SweepVariable v);

struct ChainRateSpec {
    int n_links = 1;
    double spacing_km = 10.0;
    double loss_db_per_km = kFiberLossDbPerKm;
    double c_fiber = kFiberLightSpeed;
    double overhead_s = 0.0;

    void validate() const;
};

struct ChainRateRow {
    int link;
    double start_km;
    double end_km;
    double eta_sq;
    double p_s;
    double expected_attempts;
    double period_s;
    double rate_hz;
};

/// Per-link attempt statistics; eta_sq comes from the fiber law, other fields from `params`.
/// No fidelity is composed across links.
std::vector<ChainRateRow> chain_rate(const ChainRateSpec &spec, const LinkParams &params);

std::string format_chain_csv(const std::vector<ChainRateRow> &rows);

struct MonteCarloRecord {
    uint64_t n;
    uint64_t seed;
    double p_s_hat;
    double fidelity_hat;
    double std_err_ps;
    double std_err_f;
};

/// Self-describing result of a `link` or `mc` run.
struct RunRecord {
    std::string tool = "sqlink";
    std::string tool_version;
    std::string rng;
    LinkParams params;
    double r_prime = 0;
    double d = 0;
    double p_s = 0;
    double fidelity = 0;
    std::array<double, 3> b{};
    std::optional<MonteCarloRecord> mc;
};

/// Evaluates the closed forms (and, with `mc_n`, a Monte Carlo estimate) for `params`.
RunRecord make_run_record(const LinkParams &params, std::optional<uint64_t> mc_n = std::nullopt, uint64_t seed = 0,
                          unsigned workers = 1);

/// Recomputes a record from the inputs it carries.
RunRecord rerun(const RunRecord &record, unsigned workers = 1);

std::string to_json(const RunRecord &record);
/// Throws LinkError(InvalidParameter) on malformed input.
RunRecord run_record_from_json(std::string_view text);

/// Flat `key = value` text; '#' starts a comment, blank lines are ignored.
/// Throws LinkError(InvalidParameter) with the line number on malformed lines.
std::map<std::string, std::string> parse_config(std::string_view text);

/// Applies alpha, r, theta, eta_sq, zeta, p_c (dashes accepted in place of underscores).
/// Returns the keys it did not recognise.
std::vector<std::string> apply_config(const std::map<std::string, std::string> &config, LinkParams &params);

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double value);
/// Fixed-point with `digits` decimals, independent of the global locale.
std::string format_fixed(double value, int digits);

}  // namespace sqlink

#endif

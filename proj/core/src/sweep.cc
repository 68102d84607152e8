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

#include "sqlink/sweep.h"

#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "sqlink/error.h"

#ifndef SQLINK_VERSION
#define SQLINK_VERSION "0.0.0"
#endif

namespace sqlink {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string &msg) {
    throw LinkError(ErrorKind::InvalidParameter, msg);
}

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string &key, const std::string &text) {
    double value = 0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        invalid("config: value '" + text + "' for key '" + key + "' is not a number");
    }
    return value;
}

std::string normalize_key(std::string key) {
    for (char &c : key) {
        if (c == '-') {
            c = '_';
        }
    }
    return key;
}

json number_or_null(double v) {
    return std::isfinite(v) ? json(v) : json(nullptr);
}

double number_from(const json &j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

std::string_view version() noexcept {
    return SQLINK_VERSION;
}

double eta_from_length(double length_km, double loss_db_per_km) {
    if (!std::isfinite(length_km) || length_km < 0) {
        invalid("eta_from_length: length must be >= 0 km");
    }
    if (!std::isfinite(loss_db_per_km) || loss_db_per_km < 0) {
        invalid("eta_from_length: loss must be >= 0 dB/km");
    }
    return std::pow(10.0, -loss_db_per_km * length_km / 10.0);
}

std::string_view sweep_variable_name(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::PC:
            return "pc";
        case SweepVariable::EtaSq:
            return "eta_sq";
        case SweepVariable::R:
            return "r";
        case SweepVariable::Theta:
            return "theta";
        case SweepVariable::Zeta:
            return "zeta";
        case SweepVariable::Alpha:
            return "alpha";
    }
    return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
    std::string key = normalize_key(std::string(name));
    if (key == "pc" || key == "p_c") {
        return SweepVariable::PC;
    }
    for (SweepVariable v : {SweepVariable::EtaSq, SweepVariable::R, SweepVariable::Theta, SweepVariable::Zeta,
                            SweepVariable::Alpha}) {
        if (key == sweep_variable_name(v)) {
            return v;
        }
    }
    return std::nullopt;
}

double get_field(const LinkParams &params, SweepVariable v) {
    switch (v) {
        case SweepVariable::PC:
            return params.p_c;
        case SweepVariable::EtaSq:
            return params.eta_sq;
        case SweepVariable::R:
            return params.r;
        case SweepVariable::Theta:
            return params.theta;
        case SweepVariable::Zeta:
            return params.zeta;
        case SweepVariable::Alpha:
            return params.alpha;
    }
    return 0;
}

void set_field(LinkParams &params, SweepVariable v, double value) {
    switch (v) {
        case SweepVariable::PC:
            params.p_c = value;
            break;
        case SweepVariable::EtaSq:
            params.eta_sq = value;
            break;
        case SweepVariable::R:
            params.r = value;
            break;
        case SweepVariable::Theta:
            params.theta = value;
            break;
        case SweepVariable::Zeta:
            params.zeta = value;
            break;
        case SweepVariable::Alpha:
            params.alpha = value;
            break;
    }
}

SweepSpec SweepSpec::fig2(const LinkParams &fixed) {
    return SweepSpec{SweepVariable::PC, 0.02, 1.0, 0.02, fixed};
}

std::vector<double> SweepSpec::grid() const {
    std::vector<double> points;
    if (!(step > 0) || !(start <= stop)) {
        return points;
    }
    double span = (stop - start) / step;
    auto count = static_cast<size_t>(std::floor(span * (1 + 1e-9) + 1e-9)) + 1;
    points.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        // Snap to 12 significant digits so 0.02 + 14*0.02 prints as 0.3.
        double raw = start + static_cast<double>(i) * step;
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), raw, std::chars_format::general, 12);
        double snapped = raw;
        std::from_chars(buf, end, snapped);
        points.push_back(snapped);
    }
    return points;
}

void SweepSpec::validate() const {
    if (!std::isfinite(start) || !std::isfinite(stop) || !(start <= stop)) {
        invalid("sweep: require finite start <= stop");
    }
    if (!std::isfinite(step) || !(step > 0)) {
        invalid("sweep: step must be > 0");
    }
    if ((stop - start) / step > 1e7) {
        invalid("sweep: grid has more than 1e7 points");
    }
    for (double v : grid()) {
        LinkParams p = fixed;
        set_field(p, variable, v);
        p.validate();
        if (variable == SweepVariable::PC && v == 0) {
            invalid("sweep: p_c = 0 has no defined fidelity");
        }
    }
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec, unsigned workers) {
    spec.validate();
    std::vector<double> points = spec.grid();
    std::vector<SweepRow> rows(points.size());
    auto evaluate = [&](size_t i) {
        LinkParams p = spec.fixed;
        set_field(p, spec.variable, points[i]);
        rows[i] = SweepRow{points[i], link_figures(p), p.r_prime(), p.d()};
    };

    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(points.size())));
    if (workers == 1) {
        for (size_t i = 0; i < points.size(); ++i) {
            evaluate(i);
        }
        return rows;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (size_t i = next++; i < points.size(); i = next++) {
                evaluate(i);
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    return rows;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

std::string format_fixed(double value, int digits) {
    if (!std::isfinite(value)) {
        return format_number(value);
    }
    char buf[512];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, digits);
    if (ec != std::errc()) {
        return format_number(value);
    }
    return std::string(buf, ptr);
}

std::string format_sweep_csv(const std::vector<SweepRow> &rows, SweepVariable v, bool full_columns) {
    std::string out(sweep_variable_name(v));
    out += full_columns ? ",ps,fidelity,r_prime,d,b_minus,b_zero,b_plus\n" : ",ps,fidelity\n";
    for (const SweepRow &row : rows) {
        out += format_number(row.value) + "," + format_number(row.figures.p_s) + "," +
               format_number(row.figures.fidelity);
        if (full_columns) {
            out += "," + format_number(row.r_prime) + "," + format_number(row.d);
            for (double b : row.figures.b) {
                out += "," + format_number(b);
            }
        }
        out += "\n";
    }
    return out;
}

std::string plot_script(std::string_view csv_path, SweepVariable v) {
    std::ostringstream ss;
    ss << "# gnuplot -p <this file>\n"
       << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "set multiplot layout 1,2\n"
       << "set xlabel '" << sweep_variable_name(v) << "'\n"
       << "set ylabel 'P_s'\n"
       << "plot '" << csv_path << "' using 1:2 with lines lw 2\n"
       << "set ylabel 'F'\n"
       << "plot '" << csv_path << "' using 1:3 with lines lw 2\n"
       << "unset multiplot\n";
    return ss.str();
}

void ChainRateSpec::validate() const {
    if (n_links < 1) {
        invalid("chain-rate: need at least one link");
    }
    if (!std::isfinite(spacing_km) || spacing_km < 0) {
        invalid("chain-rate: spacing must be >= 0 km");
    }
    if (!std::isfinite(c_fiber) || !(c_fiber > 0)) {
        invalid("chain-rate: fiber light speed must be > 0");
    }
    if (!std::isfinite(overhead_s) || overhead_s < 0) {
        invalid("chain-rate: overhead must be >= 0 s");
    }
}

std::vector<ChainRateRow> chain_rate(const ChainRateSpec &spec, const LinkParams &params) {
    spec.validate();
    LinkParams link = params;
    link.eta_sq = eta_from_length(spec.spacing_km, spec.loss_db_per_km);
    double p_s = success_probability(link);
    double period = spec.spacing_km * 1e3 / spec.c_fiber + spec.overhead_s;

    std::vector<ChainRateRow> rows;
    rows.reserve(static_cast<size_t>(spec.n_links));
    for (int i = 0; i < spec.n_links; ++i) {
        ChainRateRow row{};
        row.link = i + 1;
        row.start_km = i * spec.spacing_km;
        row.end_km = (i + 1) * spec.spacing_km;
        row.eta_sq = link.eta_sq;
        row.p_s = p_s;
        row.expected_attempts = p_s > 0 ? 1 / p_s : std::numeric_limits<double>::infinity();
        row.period_s = period;
        row.rate_hz = period > 0 ? p_s / period : std::numeric_limits<double>::infinity();
        rows.push_back(row);
    }
    return rows;
}

std::string format_chain_csv(const std::vector<ChainRateRow> &rows) {
    std::string out = "link,start_km,end_km,eta_sq,ps,expected_attempts,period_s,rate_hz\n";
    for (const ChainRateRow &r : rows) {
        out += std::to_string(r.link) + "," + format_number(r.start_km) + "," + format_number(r.end_km) + "," +
               format_number(r.eta_sq) + "," + format_number(r.p_s) + "," + format_number(r.expected_attempts) +
               "," + format_number(r.period_s) + "," + format_number(r.rate_hz) + "\n";
    }
    return out;
}

RunRecord make_run_record(const LinkParams &params, std::optional<uint64_t> mc_n, uint64_t seed, unsigned workers) {
    RunRecord rec;
    rec.tool_version = std::string(version());
    rec.params = params;
    LinkFigures figures = link_figures(params);
    rec.r_prime = params.r_prime();
    rec.d = params.d();
    rec.p_s = figures.p_s;
    rec.fidelity = figures.fidelity;
    rec.b = figures.b;
    if (mc_n) {
        rec.rng = std::string(kRngName);
        LinkEstimate est = estimate_link(params, *mc_n, seed, workers);
        rec.mc = MonteCarloRecord{est.n_samples, est.seed, est.p_s_hat, est.fidelity_hat, est.std_err_ps, est.std_err_f};
    }
    return rec;
}

RunRecord rerun(const RunRecord &record, unsigned workers) {
    if (record.mc) {
        return make_run_record(record.params, record.mc->n, record.mc->seed, workers);
    }
    return make_run_record(record.params);
}

std::string to_json(const RunRecord &record) {
    const LinkParams &p = record.params;
    json j;
    j["tool"] = record.tool;
    j["version"] = record.tool_version;
    j["params"] = {{"alpha", p.alpha}, {"r", p.r},       {"theta", p.theta},
                   {"eta_sq", p.eta_sq}, {"zeta", p.zeta}, {"p_c", p.p_c}};
    j["derived"] = {{"r_prime", record.r_prime}, {"d", record.d}};
    j["p_s"] = record.p_s;
    j["fidelity"] = record.fidelity;
    j["b"] = {record.b[0], record.b[1], record.b[2]};
    if (record.mc) {
        const MonteCarloRecord &mc = *record.mc;
        j["rng"] = record.rng;
        j["seed"] = mc.seed;
        j["monte_carlo"] = {{"n", mc.n},
                            {"seed", mc.seed},
                            {"p_s_hat", number_or_null(mc.p_s_hat)},
                            {"fidelity_hat", number_or_null(mc.fidelity_hat)},
                            {"std_err_ps", number_or_null(mc.std_err_ps)},
                            {"std_err_f", number_or_null(mc.std_err_f)}};
    }
    return j.dump(2) + "\n";
}

RunRecord run_record_from_json(std::string_view text) {
    try {
        json j = json::parse(text);
        RunRecord rec;
        rec.tool = j.at("tool").get<std::string>();
        rec.tool_version = j.at("version").get<std::string>();
        const json &p = j.at("params");
        rec.params.alpha = p.at("alpha").get<double>();
        rec.params.r = p.at("r").get<double>();
        rec.params.theta = p.at("theta").get<double>();
        rec.params.eta_sq = p.at("eta_sq").get<double>();
        rec.params.zeta = p.at("zeta").get<double>();
        rec.params.p_c = p.at("p_c").get<double>();
        rec.r_prime = j.at("derived").at("r_prime").get<double>();
        rec.d = j.at("derived").at("d").get<double>();
        rec.p_s = j.at("p_s").get<double>();
        rec.fidelity = j.at("fidelity").get<double>();
        const json &b = j.at("b");
        for (size_t i = 0; i < 3; ++i) {
            rec.b[i] = b.at(i).get<double>();
        }
        if (j.contains("monte_carlo")) {
            const json &mc = j.at("monte_carlo");
            rec.rng = j.at("rng").get<std::string>();
            rec.mc = MonteCarloRecord{mc.at("n").get<uint64_t>(),          mc.at("seed").get<uint64_t>(),
                                      number_from(mc.at("p_s_hat")),      number_from(mc.at("fidelity_hat")),
                                      number_from(mc.at("std_err_ps")),   number_from(mc.at("std_err_f"))};
        }
        return rec;
    } catch (const json::exception &e) {
        invalid(std::string("run record: ") + e.what());
    }
}

std::map<std::string, std::string> parse_config(std::string_view text) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (size_t hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::string body = trim(line);
        if (body.empty()) {
            continue;
        }
        size_t eq = body.find('=');
        if (eq == std::string::npos) {
            invalid("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = normalize_key(trim(std::string_view(body).substr(0, eq)));
        std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty()) {
            invalid("config line " + std::to_string(lineno) + ": empty key or value");
        }
        out[key] = value;
    }
    return out;
}

std::vector<std::string> apply_config(const std::map<std::string, std::string> &config, LinkParams &params) {
    std::vector<std::string> unknown;
    for (const auto &[raw_key, value] : config) {
        std::string key = normalize_key(raw_key);
        if (key == "p_c" || key == "pc") {
            params.p_c = parse_double(key, value);
        } else if (auto v = parse_sweep_variable(key)) {
            set_field(params, *v, parse_double(key, value));
        } else {
            unknown.push_back(raw_key);
        }
    }
    return unknown;
}

}  // namespace sqlink

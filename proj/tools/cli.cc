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

#include "cli.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sqlink/analytic.h"
#include "sqlink/error.h"
#include "sqlink/link_model.h"
#include "sqlink/montecarlo.h"
#include "sqlink/sweep.h"

namespace sqlink::cli {

namespace {

constexpr double kDefaultLengthKm = 10.0;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Link flags shared by every subcommand. Unset flags fall through to the
/// config file, then to the built-in operating point. Without eta_sq the
/// transmittance follows the fiber law over length_km (default 10 km).
struct CommonFlags {
    std::optional<double> alpha, r, theta, eta_sq, zeta, p_c, length_km, loss_db_per_km;
    std::string config;
    std::string out;
    std::string format = "table";
    unsigned workers = 1;

    void attach(CLI::App *app, bool with_format) {
        app->add_option("--alpha", alpha, "Probe amplitude (real, > 0)");
        app->add_option("--r", r, "Squeeze factor at the source");
        app->add_option("--theta", theta, "Dispersive phase per node [rad]");
        app->add_option("--eta-sq", eta_sq, "Fiber power transmittance");
        app->add_option("--zeta", zeta, "Coherence factor of the entangled branch");
        app->add_option("--p-c", p_c, "Homodyne acceptance half-window");
        app->add_option("--length-km", length_km, "Fiber length for the transmittance law (default 10)");
        app->add_option("--loss-db-per-km", loss_db_per_km, "Fiber attenuation used with --length-km");
        app->add_option("--config", config, "key = value file; flags override it");
        app->add_option("--out", out, "Write output to this file instead of stdout");
        app->add_option("--workers", workers, "Worker threads")->check(CLI::Range(1u, 256u));
        if (with_format) {
            app->add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "record"}));
        }
    }

    std::map<std::string, std::string> load_config() const {
        if (config.empty()) {
            return {};
        }
        std::ifstream in(config);
        if (!in) {
            throw IoError("cannot read config file '" + config + "'");
        }
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_config(ss.str());
    }

    /// Built-in defaults < config file < flags.
    LinkParams resolve(std::map<std::string, std::string> &extra) const {
        LinkParams params = LinkParams::operating_point();
        auto config_values = load_config();
        auto unknown = apply_config(config_values, params);

        std::optional<double> cfg_length, cfg_loss;
        for (const std::string &key : unknown) {
            const std::string &value = config_values.at(key);
            if (key == "length_km" || key == "loss_db_per_km") {
                double v = 0;
                try {
                    v = std::stod(value);
                } catch (const std::exception &) {
                    throw UsageError("config: value '" + value + "' for '" + key + "' is not a number");
                }
                (key == "length_km" ? cfg_length : cfg_loss) = v;
            } else {
                extra[key] = value;
            }
        }

        if (alpha) params.alpha = *alpha;
        if (r) params.r = *r;
        if (theta) params.theta = *theta;
        if (zeta) params.zeta = *zeta;
        if (p_c) params.p_c = *p_c;

        double loss = loss_db_per_km ? *loss_db_per_km : cfg_loss.value_or(kFiberLossDbPerKm);
        if (eta_sq && length_km) {
            throw UsageError("--eta-sq and --length-km are mutually exclusive");
        }
        if (config_values.count("eta_sq") && cfg_length) {
            throw UsageError("config: eta_sq and length_km are mutually exclusive");
        }
        if (eta_sq) {
            params.eta_sq = *eta_sq;
        } else if (length_km) {
            params.eta_sq = eta_from_length(*length_km, loss);
        } else if (!config_values.count("eta_sq")) {
            params.eta_sq = eta_from_length(cfg_length.value_or(kDefaultLengthKm), loss);
        }
        params.validate();
        return params;
    }
};

void emit(const CommonFlags &flags, const std::string &text, std::ostream &out) {
    if (flags.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(flags.out, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw IoError("cannot write '" + flags.out + "'");
    }
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text) || !file.flush()) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string line(std::string_view key, const std::string &value) {
    std::string s(key);
    s.resize(std::max<size_t>(s.size() + 1, 14), ' ');
    return s + value + "\n";
}

std::string link_table(const RunRecord &rec) {
    const LinkParams &p = rec.params;
    std::string s = "sqlink " + rec.tool_version + "\n";
    s += line("alpha", format_number(p.alpha));
    s += line("r", format_number(p.r));
    s += line("theta", format_number(p.theta));
    s += line("eta_sq", format_number(p.eta_sq));
    s += line("zeta", format_number(p.zeta));
    s += line("p_c", format_number(p.p_c));
    s += line("r_prime", format_fixed(rec.r_prime, 6));
    s += line("d", format_fixed(rec.d, 6));
    s += line("b_-1", format_fixed(rec.b[0], 6));
    s += line("b_0", format_fixed(rec.b[1], 6));
    s += line("b_+1", format_fixed(rec.b[2], 6));
    s += line("P_s", format_fixed(rec.p_s, 6));
    s += line("F", format_fixed(rec.fidelity, 6));
    if (rec.mc) {
        const MonteCarloRecord &mc = *rec.mc;
        s += line("rng", rec.rng);
        s += line("seed", std::to_string(mc.seed));
        s += line("n", std::to_string(mc.n));
        s += line("P_s_hat", format_fixed(mc.p_s_hat, 6) + " +- " + format_fixed(mc.std_err_ps, 6));
        s += line("F_hat", format_fixed(mc.fidelity_hat, 6) + " +- " + format_fixed(mc.std_err_f, 6));
    }
    return s;
}

std::string render(const CommonFlags &flags, const RunRecord &rec) {
    return flags.format == "record" ? to_json(rec) : link_table(rec);
}

/// True when both estimates lie within 4 standard errors of the closed forms.
bool within_four_sigma(const RunRecord &rec) {
    const MonteCarloRecord &mc = *rec.mc;
    bool ps_ok = std::abs(mc.p_s_hat - rec.p_s) <= 4 * mc.std_err_ps;
    bool f_ok = std::isfinite(mc.fidelity_hat) && std::abs(mc.fidelity_hat - rec.fidelity) <= 4 * mc.std_err_f;
    return ps_ok && f_ok;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Squeezed-light entanglement link: closed forms, sweeps and Monte Carlo checks", "sqlink"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(version()));

    CommonFlags link_flags, fig2_flags, sweep_flags, mc_flags, chain_flags;

    CLI::App *link_cmd = app.add_subcommand("link", "Evaluate P_s, F, r', d and b_s for one link");
    link_flags.attach(link_cmd, true);

    CLI::App *fig2_cmd = app.add_subcommand("fig2", "P_s and F against the acceptance window p_c");
    fig2_flags.attach(fig2_cmd, false);
    SweepSpec fig2_grid = SweepSpec::fig2(LinkParams::operating_point());
    fig2_cmd->add_option("--start", fig2_grid.start, "First p_c");
    fig2_cmd->add_option("--stop", fig2_grid.stop, "Last p_c");
    fig2_cmd->add_option("--step", fig2_grid.step, "p_c increment");

    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Sweep one link parameter");
    sweep_flags.attach(sweep_cmd, false);
    std::string sweep_var;
    SweepSpec sweep_grid;
    sweep_cmd->add_option("--var", sweep_var, "pc | eta_sq | r | theta | zeta | alpha")->required();
    sweep_cmd->add_option("--start", sweep_grid.start)->required();
    sweep_cmd->add_option("--stop", sweep_grid.stop)->required();
    sweep_cmd->add_option("--step", sweep_grid.step)->required();

    CLI::App *mc_cmd = app.add_subcommand("mc", "Monte Carlo estimate of P_s and F");
    mc_flags.attach(mc_cmd, true);
    uint64_t mc_n = 1000000;
    uint64_t mc_seed = 1;
    bool mc_check = false;
    mc_cmd->add_option("--n", mc_n, "Number of homodyne samples")->check(CLI::PositiveNumber);
    mc_cmd->add_option("--seed", mc_seed, "Philox key");
    mc_cmd->add_flag("--check", mc_check, "Exit 3 unless both estimates are within 4 sigma of the closed forms");

    CLI::App *chain_cmd = app.add_subcommand("chain-rate", "Per-link attempt statistics along a repeater chain");
    chain_flags.attach(chain_cmd, false);
    ChainRateSpec chain;
    chain_cmd->add_option("--links", chain.n_links, "Number of links");
    chain_cmd->add_option("--spacing-km", chain.spacing_km, "Station spacing");
    chain_cmd->add_option("--c-fiber", chain.c_fiber, "Light speed in fiber [m/s]");
    chain_cmd->add_option("--overhead-s", chain.overhead_s, "Fixed per-attempt overhead [s]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        out << version() << "\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        std::map<std::string, std::string> extra;
        if (link_cmd->parsed()) {
            LinkParams params = link_flags.resolve(extra);
            emit(link_flags, render(link_flags, make_run_record(params)), out);
            return kExitOk;
        }
        if (fig2_cmd->parsed()) {
            fig2_grid.fixed = fig2_flags.resolve(extra);
            auto rows = run_sweep(fig2_grid, fig2_flags.workers);
            emit(fig2_flags, format_sweep_csv(rows, SweepVariable::PC, false), out);
            if (!fig2_flags.out.empty()) {
                write_file(fig2_flags.out + ".gp", plot_script(fig2_flags.out, SweepVariable::PC));
            }
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            auto var = parse_sweep_variable(sweep_var);
            if (!var) {
                throw UsageError("unknown sweep variable '" + sweep_var + "'");
            }
            sweep_grid.variable = *var;
            sweep_grid.fixed = sweep_flags.resolve(extra);
            auto rows = run_sweep(sweep_grid, sweep_flags.workers);
            emit(sweep_flags, format_sweep_csv(rows, *var, true), out);
            if (!sweep_flags.out.empty()) {
                write_file(sweep_flags.out + ".gp", plot_script(sweep_flags.out, *var));
            }
            return kExitOk;
        }
        if (mc_cmd->parsed()) {
            LinkParams params = mc_flags.resolve(extra);
            if (extra.count("seed") && mc_cmd->count("--seed") == 0) {
                mc_seed = std::stoull(extra.at("seed"));
            }
            if (extra.count("n") && mc_cmd->count("--n") == 0) {
                mc_n = std::stoull(extra.at("n"));
            }
            RunRecord rec = make_run_record(params, mc_n, mc_seed, mc_flags.workers);
            emit(mc_flags, render(mc_flags, rec), out);
            if (mc_check && !within_four_sigma(rec)) {
                err << "sqlink mc: estimates are more than 4 standard errors from the closed forms\n";
                return kExitCheckFailed;
            }
            return kExitOk;
        }
        if (chain_cmd->parsed()) {
            if (chain_flags.loss_db_per_km) {
                chain.loss_db_per_km = *chain_flags.loss_db_per_km;
            }
            LinkParams params = chain_flags.resolve(extra);
            emit(chain_flags, format_chain_csv(chain_rate(chain, params)), out);
            return kExitOk;
        }
    } catch (const IoError &e) {
        err << "sqlink: " << e.what() << "\n";
        return kExitIo;
    } catch (const UsageError &e) {
        err << "sqlink: " << e.what() << "\n";
        return kExitUsage;
    } catch (const LinkError &e) {
        err << "sqlink: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error &e) {
        // std::stoull on a malformed config value.
        err << "sqlink: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace sqlink::cli

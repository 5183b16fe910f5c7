// SPDX-License-Identifier: Apache-2.0
//
// iasim: closed-form interference alignment under distributed CSIT
// Copyright (C) 2026 The iasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// iasim command-line front end.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iasim/errors.hpp"
#include "iasim/parallel.hpp"
#include "iasim/report.hpp"
#include "iasim/scenario.hpp"
#include "iasim/sweep.hpp"
#include "iasim/validate.hpp"

namespace {

using namespace iasim;

struct Common {
    std::string out_csv;
    std::string out_svg;
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--out-csv", c.out_csv, "write the result table to this CSV file");
    app->add_option("--out-svg", c.out_svg, "write a chart to this SVG file");
    app->add_option("--seed", c.seed, "override the RNG seed");
    app->add_option("--trials", c.trials, "override the number of trials")->check(CLI::PositiveNumber);
}

void apply(const Common& c, Scenario& s) {
    if (c.seed)
        s.seed = *c.seed;
    if (c.trials)
        s.trials = *c.trials;
}

int fail(std::string_view code, const std::string& message) {
    nlohmann::json line{{"error", std::string(code)}, {"message", message}};
    std::cerr << line.dump() << '\n';
    return 1;
}

// A path, or one of the built-in names golden, all_one, weak_link.
Scenario resolve_scenario(const std::string& spec) {
    if (!std::filesystem::exists(spec)) {
        Scenario s = golden_scenario();
        if (spec == "golden")
            return s;
        if (spec == "all_one") {
            s.name = "all_one";
            s.csit = CsitProfile::uniform(3, 1.0);
            return s;
        }
        if (spec == "weak_link") {
            s.name = "weak_link";
            s.csit = single_weak_link_profile();
            return s;
        }
    }
    return load_scenario(spec);
}

void print_sweep(const SweepResult& r) {
    std::printf("# trials %zu, draws %zu, scenario %s, digest %s\n", r.trials, r.draws, hex64(r.scenario_hash).c_str(),
                hex64(r.digest()).c_str());
    std::printf("%8s", "snr_db");
    const std::size_t users = r.points.empty() ? 0 : r.points.front().per_user_rate.size();
    for (std::size_t u = 0; u < users; ++u)
        std::printf("  %10s%zu %8s", "rate", u + 1, "stderr");
    std::printf("  %8s\n", "degen");
    for (std::size_t p = 0; p < r.points.size(); ++p) {
        std::printf("%8.2f", r.points[p].snr_db);
        for (std::size_t u = 0; u < users; ++u)
            std::printf("  %11.5f %8.5f", r.points[p].per_user_rate[u], r.points[p].per_user_stderr[u]);
        std::printf("  %8.5f\n", r.degenerate_fraction[p]);
    }
    if (!r.dof.per_user_slope.empty()) {
        std::printf("# DoF slope over %.1f..%.1f dB:", r.dof.window_db.first, r.dof.window_db.second);
        for (std::size_t u = 0; u < r.dof.per_user_slope.size(); ++u)
            std::printf(" user%zu %.4f (r2 %.4f)", u + 1, r.dof.per_user_slope[u], r.dof.r2[u]);
        std::printf("\n");
    }
}

void write_sweep_outputs(const Common& c, const SweepResult& r, std::string_view title) {
    if (!c.out_csv.empty())
        emit_csv(r, c.out_csv);
    if (!c.out_svg.empty())
        emit_svg(r, c.out_svg, title);
}

std::vector<double> parse_reals(const std::string& text, std::string_view what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + ": not a number: '" + item + "'");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form 3-user MIMO interference alignment with distributed CSIT"};
    app.require_subcommand(1);
    app.footer("Environment: IASIM_THREADS sets the worker-thread count (default: hardware parallelism).");

    Common sweep_opts, prop2_opts, quant_opts, scaling_opts, validate_opts;

    auto* sweep = app.add_subcommand("sweep", "Monte-Carlo rate sweep of a scenario file");
    std::string scenario_path;
    sweep->add_option("scenario", scenario_path, "scenario file, or golden | all_one | weak_link")->required();
    add_common(sweep, sweep_opts);

    auto* prop2 = app.add_subcommand("prop2", "perfect-CSI precoders with injected errors of power P^-beta");
    std::string beta_text = "0.5,0.5,0.5";
    std::string prop2_scenario = "golden";
    prop2->add_option("--beta", beta_text, "three comma-separated exponents in [0, 1]")->capture_default_str();
    prop2->add_option("--scenario", prop2_scenario, "base scenario (CSIT profile ignored)")->capture_default_str();
    add_common(prop2, prop2_opts);

    auto* quant = app.add_subcommand("quantizer", "RVQ distortion against feedback bits");
    int qn = 2, qm = 2, qtrials = 1000;
    std::string bits_text = "6,9,12,15,18";
    std::uint64_t qseed = 20130601;
    quant->add_option("-N", qn, "receive antennas")->capture_default_str();
    quant->add_option("-M", qm, "transmit antennas")->capture_default_str();
    quant->add_option("--bits", bits_text, "comma-separated bit counts")->capture_default_str();
    add_common(quant, quant_opts);

    auto* scaling = app.add_subcommand("scaling", "precoder error of TX 1 against P for uniform CSIT exponents");
    std::string amin_text = "0.25,0.5,1";
    std::string scaling_scenario;
    double eps = 0.05;
    scaling->add_option("--a-min", amin_text, "comma-separated exponents")->capture_default_str();
    scaling->add_option("--eps", eps, "channel conditioning threshold (0 disables)")->capture_default_str();
    scaling->add_option("--scenario", scaling_scenario, "base scenario; default 20..60 dB, 500 trials");
    add_common(scaling, scaling_opts);

    auto* validate = app.add_subcommand("validate", "run the invariant suites of every module");
    add_common(validate, validate_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        fail("usage", e.what());
        return 2;
    }

    try {
        if (*sweep) {
            Scenario s = resolve_scenario(scenario_path);
            apply(sweep_opts, s);
            const SweepResult r = run_sweep(s);
            print_sweep(r);
            write_sweep_outputs(sweep_opts, r, "Average rate per user: " + s.name);
        } else if (*prop2) {
            const auto beta = parse_reals(beta_text, "--beta");
            if (beta.size() != 3)
                throw Error(ErrorCode::InvalidArgument, "--beta needs exactly three values");
            Scenario s = resolve_scenario(prop2_scenario);
            s.csit.reset();
            apply(prop2_opts, s);
            const SweepResult r = prop2_experiment({beta[0], beta[1], beta[2]}, s);
            print_sweep(r);
            write_sweep_outputs(prop2_opts, r, "Injected precoder errors, beta = " + beta_text);
        } else if (*quant) {
            std::vector<int> bits;
            for (double b : parse_reals(bits_text, "--bits")) {
                if (b != static_cast<int>(b))
                    throw Error(ErrorCode::InvalidArgument, "--bits: not an integer: " + format_number(b));
                bits.push_back(static_cast<int>(b));
            }
            const QuantizerStudy q = quantizer_study(qn, qm, bits, quant_opts.trials.value_or(qtrials),
                                                     quant_opts.seed.value_or(qseed));
            std::printf("%6s %16s %12s\n", "bits", "E[dist^2]", "stderr");
            for (const auto& r : q.rows)
                std::printf("%6d %16.8g %12.4g\n", r.bits, r.distortion_sq.mean, r.distortion_sq.std_error);
            std::printf("# fitted exponent %.4f (r2 %.4f), N*M-1 = %d\n", q.exponent, q.r2, qn * qm - 1);
            if (!quant_opts.out_csv.empty())
                write_text_file(quant_opts.out_csv, format_quantizer_csv(q));
            if (!quant_opts.out_svg.empty())
                write_text_file(quant_opts.out_svg, render_chart(quantizer_chart(q)));
        } else if (*scaling) {
            Scenario s;
            if (scaling_scenario.empty()) {
                s.name = "scaling";
                s.dims = Dims::square(3, 4, 2);
                s.snr_grid_db = {20, 30, 40, 50, 60};
                s.trials = 500;
                s.seed = 20130601;
                s.csit = CsitProfile::uniform(3, 1.0);
            } else {
                s = resolve_scenario(scaling_scenario);
            }
            s.filter_eps = eps > 0 ? std::optional<double>(eps) : std::nullopt;
            apply(scaling_opts, s);
            const auto a_min = parse_reals(amin_text, "--a-min");
            const ScalingStudy st = precoder_scaling_study(a_min, s);
            std::printf("# trials %zu, draws %zu\n", st.trials, st.draws);
            std::printf("%6s %8s %14s %14s %14s\n", "A_min", "snr_db", "frob_sq", "aligned_sq", "chordal_sq");
            for (const auto& row : st.rows) {
                for (std::size_t p = 0; p < row.P.size(); ++p)
                    std::printf("%6.3f %8.2f %14.6g %14.6g %14.6g\n", row.a_min, 10.0 * std::log10(row.P[p]),
                                row.frob_sq[p].mean, row.aligned_sq[p].mean, row.chordal_sq[p].mean);
                std::printf("# A_min %.3f exponents: frob %.4f aligned %.4f chordal %.4f (failed %zu)\n", row.a_min,
                            row.exponent_frob, row.exponent_aligned, row.exponent_chordal, row.failed);
            }
            if (!scaling_opts.out_csv.empty())
                write_text_file(scaling_opts.out_csv, format_scaling_csv(st));
            if (!scaling_opts.out_svg.empty())
                write_text_file(scaling_opts.out_svg, render_chart(scaling_chart(st)));
        } else if (*validate) {
            ValidationOptions opts;
            if (validate_opts.seed)
                opts.seed = *validate_opts.seed;
            opts.trials = validate_opts.trials.value_or(0);
            const ValidationReport report = run_validation(opts, [](const CheckResult& c) {
                std::printf("%s %s.%s (%.2fs): %s\n", c.passed ? "PASS" : "FAIL", c.module.c_str(), c.name.c_str(),
                            c.seconds, c.detail.c_str());
                std::fflush(stdout);
            });
            if (!validate_opts.out_csv.empty()) {
                std::string csv = "module,check,passed,seconds\n";
                for (const auto& c : report.checks)
                    csv += c.module + ',' + c.name + ',' + (c.passed ? "1" : "0") + ',' + format_number(c.seconds) + '\n';
                write_text_file(validate_opts.out_csv, csv);
            }
            if (!validate_opts.out_svg.empty()) {
                Chart chart{"Invariant check runtimes", "check", "seconds", {{"runtime", {}, {}}}};
                for (std::size_t i = 0; i < report.checks.size(); ++i) {
                    chart.series[0].x.push_back(static_cast<double>(i + 1));
                    chart.series[0].y.push_back(report.checks[i].seconds);
                }
                write_text_file(validate_opts.out_svg, render_chart(chart));
            }
            std::printf("# %zu checks, %zu failures\n", report.checks.size(), report.failures());
            if (report.failures() > 0)
                return fail("validation_failed", std::to_string(report.failures()) + " invariant checks failed");
        }
    } catch (const Error& e) {
        return fail(error_code_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return fail("internal", e.what());
    }
    return 0;
}

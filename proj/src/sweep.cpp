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

#include "iasim/sweep.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "iasim/channel.hpp"
#include "iasim/csit.hpp"
#include "iasim/errors.hpp"
#include "iasim/ia3.hpp"
#include "iasim/parallel.hpp"
#include "iasim/rng.hpp"

namespace iasim {

namespace {

constexpr double kMaxFailedFraction = 0.01;

enum class Status : std::uint8_t { Ok, Degenerate, Failed };

bool is_numerical(ErrorCode code) {
    switch (code) {
    case ErrorCode::SingularMatrix:
    case ErrorCode::NumericalFailure:
    case ErrorCode::EmptyComplement:
    case ErrorCode::RankDeficient:
        return true;
    default:
        return false;
    }
}

struct PointPrecoders {
    std::array<CMatrix, 3> precoders;
    bool degenerate = false;
    std::string error; // non-empty: this trial failed at this point
};

struct TrialOutcome {
    std::vector<double> rates; // point-major, K per point
    std::vector<Status> status;
    std::string error;
};

class Fnv1a {
public:
    void add(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void add(double v) { add(&v, sizeof v); }
    void add(std::uint64_t v) { add(&v, sizeof v); }
    std::uint64_t value() const { return h_; }

private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

CMatrix unit_frobenius(const CMatrix& a) {
    return a / a.norm();
}

void require_closed_form_setting(const Scenario& s) {
    s.validate();
    require(s.dims.is_square_three_user(), ErrorCode::InvalidArgument,
            "sweep: the closed-form scheme needs K = 3 and M = N = 2d for every user");
}

std::vector<double> snr_to_power(const std::vector<double>& grid_db) {
    std::vector<double> out;
    for (double db : grid_db)
        out.push_back(metrics::db_to_linear(db));
    return out;
}

// Shared Monte-Carlo loop. `source(channel, perfect, trial, point, P)` yields the
// precoders actually transmitted at that point.
template <class Source>
SweepResult sweep_engine(const Scenario& s, Source&& source) {
    require_closed_form_setting(s);
    const int K = 3;
    const int d = s.dims.d[0];
    const auto [trials, draws] = select_trials(s);
    const std::vector<double> power = snr_to_power(s.snr_grid_db);
    const std::size_t points = power.size();

    std::vector<TrialOutcome> outcomes(trials.size());
    parallel_for(trials.size(), [&](std::size_t slot) {
        const std::uint64_t trial = trials[slot];
        TrialOutcome& o = outcomes[slot];
        o.rates.assign(points * K, 0.0);
        o.status.assign(points, Status::Failed);

        const MultiUserChannel channel = channel::generate_channel(s.dims, s.seed, trial);
        IaSolution perfect;
        try {
            perfect = ia3::solve_perfect(channel, d);
        } catch (const Error& e) {
            if (!is_numerical(e.code()))
                throw;
            o.error = "trial " + std::to_string(trial) + ": " + e.what();
            return;
        }

        for (std::size_t p = 0; p < points; ++p) {
            try {
                const PointPrecoders pre = source(channel, perfect, trial, p, power[p]);
                if (!pre.error.empty()) {
                    if (o.error.empty())
                        o.error = "trial " + std::to_string(trial) + ": " + pre.error;
                    continue;
                }
                std::vector<CMatrix> filters;
                if (s.receiver == Receiver::PerfectIa)
                    filters.assign(perfect.filters.begin(), perfect.filters.end());
                else
                    filters = metrics::mmse_filters(channel, pre.precoders, power[p]);
                for (int i = 0; i < K; ++i)
                    o.rates[p * K + static_cast<std::size_t>(i)] =
                        metrics::rate_user(channel, pre.precoders, filters, power[p], i);
                o.status[p] = pre.degenerate ? Status::Degenerate : Status::Ok;
            } catch (const Error& e) {
                if (!is_numerical(e.code()))
                    throw;
                if (o.error.empty())
                    o.error = "trial " + std::to_string(trial) + ": " + e.what();
            }
        }
    });

    SweepResult result;
    result.trials = trials.size();
    result.draws = draws;
    result.scenario_hash = s.hash();
    for (std::size_t p = 0; p < points; ++p) {
        RatePoint point;
        point.snr_db = s.snr_grid_db[p];
        std::size_t failed = 0, degenerate = 0;
        std::string first_error;
        std::vector<std::vector<double>> per_user(K);
        for (const auto& o : outcomes) {
            if (o.status[p] == Status::Failed) {
                ++failed;
                if (first_error.empty())
                    first_error = o.error;
                continue;
            }
            if (o.status[p] == Status::Degenerate)
                ++degenerate;
            for (int i = 0; i < K; ++i)
                per_user[static_cast<std::size_t>(i)].push_back(o.rates[p * K + static_cast<std::size_t>(i)]);
        }
        const double n = static_cast<double>(outcomes.size());
        const double failed_fraction = static_cast<double>(failed) / n;
        if (failed_fraction > kMaxFailedFraction) {
            throw Error(ErrorCode::SweepAborted,
                        "sweep aborted at " + std::to_string(point.snr_db) + " dB: " + std::to_string(failed) + " of " +
                            std::to_string(outcomes.size()) + " trials failed; first failure: " + first_error);
        }
        for (const auto& values : per_user) {
            const MeanStat m = mean_stat(values);
            point.per_user_rate.push_back(m.mean);
            point.per_user_stderr.push_back(m.std_error);
        }
        const std::size_t used = outcomes.size() - failed;
        result.degenerate_fraction.push_back(used ? static_cast<double>(degenerate) / static_cast<double>(used) : 0.0);
        result.failed_fraction.push_back(failed_fraction);
        result.points.push_back(std::move(point));
    }
    if (result.points.size() >= static_cast<std::size_t>(s.dof_window))
        result.dof = metrics::dof_slope(result.points, s.dof_window);
    return result;
}

double log_slope(const std::vector<double>& P, const std::vector<MeanStat>& values) {
    std::vector<double> x, y;
    for (std::size_t p = 0; p < P.size(); ++p) {
        if (!(values[p].mean > 0.0))
            return std::numeric_limits<double>::quiet_NaN();
        x.push_back(std::log10(P[p]));
        y.push_back(std::log10(values[p].mean));
    }
    if (x.size() < 2)
        return std::numeric_limits<double>::quiet_NaN();
    return linear_fit(x, y).slope;
}

} // namespace

std::uint64_t SweepResult::digest() const {
    Fnv1a h;
    for (const auto& p : points) {
        h.add(p.snr_db);
        for (double r : p.per_user_rate)
            h.add(r);
        for (double e : p.per_user_stderr)
            h.add(e);
    }
    for (double v : dof.per_user_slope)
        h.add(v);
    for (double v : degenerate_fraction)
        h.add(v);
    for (double v : failed_fraction)
        h.add(v);
    h.add(static_cast<std::uint64_t>(trials));
    h.add(static_cast<std::uint64_t>(draws));
    h.add(scenario_hash);
    return h.value();
}

std::pair<std::vector<std::uint64_t>, std::size_t> select_trials(const Scenario& s) {
    const auto wanted = static_cast<std::size_t>(s.trials);
    std::vector<std::uint64_t> accepted;
    if (!s.filter_eps || *s.filter_eps <= 0.0) {
        for (std::size_t t = 0; t < wanted; ++t)
            accepted.push_back(t);
        return {accepted, wanted};
    }
    const double eps = *s.filter_eps;
    const std::size_t cap = 1000 * wanted;
    std::size_t next = 0;
    while (accepted.size() < wanted) {
        if (next >= cap)
            throw Error(ErrorCode::SweepAborted, "channel filter accepted only " + std::to_string(accepted.size()) + " of " +
                                                     std::to_string(cap) + " draws at eps = " + std::to_string(eps));
        const std::size_t batch = std::min(cap - next, std::max<std::size_t>(64, 4 * (wanted - accepted.size())));
        std::vector<std::uint8_t> pass(batch, 0);
        parallel_for(batch, [&](std::size_t b) {
            pass[b] = ia3::conditioning_filter(channel::generate_channel(s.dims, s.seed, next + b), eps) ? 1 : 0;
        });
        for (std::size_t b = 0; b < batch && accepted.size() < wanted; ++b)
            if (pass[b])
                accepted.push_back(next + b);
        next += batch;
    }
    return {accepted, static_cast<std::size_t>(accepted.back() + 1)};
}

SweepResult run_sweep(const Scenario& s) {
    const int d = s.dims.d.empty() ? 0 : s.dims.d[0];
    if (!s.csit) {
        return sweep_engine(s, [](const MultiUserChannel&, const IaSolution& perfect, std::uint64_t, std::size_t, double) {
            return PointPrecoders{perfect.precoders, perfect.degenerate, {}};
        });
    }
    CsitProfile profile = *s.csit;
    profile.error_norm = s.error_norm;
    return sweep_engine(s, [&](const MultiUserChannel& channel, const IaSolution& perfect, std::uint64_t trial,
                               std::size_t, double P) {
        const StreamKey key = StreamKey(s.seed).child({domain::estimate, trial});
        const auto estimates = csit::make_estimates(channel, profile, P, key);
        const DistributedSolution dist = ia3::solve_distributed(estimates, d);
        PointPrecoders out;
        if (!dist.ok()) {
            for (const auto& e : dist.errors)
                if (!e.empty()) {
                    out.error = e;
                    break;
                }
            return out;
        }
        out.precoders = dist.used_precoders;
        out.degenerate = perfect.degenerate || dist.any_degenerate();
        return out;
    });
}

SweepResult prop2_experiment(const std::array<double, 3>& beta, const Scenario& s) {
    for (double b : beta)
        require(b >= 0.0 && b <= 1.0, ErrorCode::InvalidArgument, "prop2_experiment: beta must lie in [0, 1]");
    return sweep_engine(s, [&](const MultiUserChannel&, const IaSolution& perfect, std::uint64_t trial, std::size_t,
                               double P) {
        PointPrecoders out;
        out.degenerate = perfect.degenerate;
        for (std::size_t j = 0; j < 3; ++j) {
            const CMatrix& u_star = perfect.precoders[j];
            RngStream rng(StreamKey(s.seed).child({domain::perturbation, trial, static_cast<std::uint64_t>(j)}));
            CMatrix e(u_star.rows(), u_star.cols());
            for (Eigen::Index c = 0; c < e.cols(); ++c)
                for (Eigen::Index r = 0; r < e.rows(); ++r)
                    e(r, c) = rng.complex_normal();
            e = unit_frobenius(e);
            out.precoders[j] = unit_frobenius(u_star + std::pow(P, -beta[j] / 2.0) * e);
        }
        return out;
    });
}

QuantizerStudy quantizer_study(int N, int M, std::span<const int> bits, int trials, std::uint64_t seed) {
    require(N * M >= 2, ErrorCode::InvalidArgument, "quantizer_study: need N*M >= 2");
    require(trials >= 1, ErrorCode::InvalidArgument, "quantizer_study: trials must be >= 1");
    QuantizerStudy out;
    out.N = N;
    out.M = M;
    for (int b : bits) {
        if (b > 24)
            throw CodebookTooLarge("quantizer_study: " + std::to_string(b) + " bits exceeds the limit of 24");
        require(b >= 0, ErrorCode::InvalidArgument, "quantizer_study: negative bit count");
    }
    for (int b : bits) {
        std::vector<double> dist_sq(static_cast<std::size_t>(trials));
        parallel_for(dist_sq.size(), [&](std::size_t t) {
            const StreamKey base = StreamKey(seed).child({static_cast<std::uint64_t>(b), t});
            RngStream source(base.child(domain::source));
            NormalizedLink link{csit::draw_codeword(N, M, source), 0.0, 1.0};
            RngStream codebook(base.child(domain::codebook));
            const auto q = csit::rvq_quantize(link, b, codebook);
            dist_sq[t] = q.distortion * q.distortion;
        });
        out.rows.push_back({b, mean_stat(dist_sq)});
    }
    out.exponent = std::numeric_limits<double>::quiet_NaN();
    if (out.rows.size() >= 2) {
        std::vector<double> x, y;
        for (const auto& r : out.rows) {
            x.push_back(r.bits);
            y.push_back(std::log2(r.distortion_sq.mean));
        }
        const LinearFit fit = linear_fit(x, y);
        out.exponent = fit.slope;
        out.r2 = fit.r2;
    }
    return out;
}

ScalingStudy precoder_scaling_study(std::span<const double> a_min_values, const Scenario& s) {
    require_closed_form_setting(s);
    require(!s.csit || s.csit->model == CsitModel::Gaussian, ErrorCode::InvalidArgument,
            "precoder_scaling_study: needs the Gaussian CSIT model");
    require(s.snr_grid_db.size() >= 2, ErrorCode::InvalidArgument, "precoder_scaling_study: need at least two SNR points");
    for (double a : a_min_values)
        require(a >= 0.0 && std::isfinite(a), ErrorCode::InvalidArgument, "precoder_scaling_study: A_min must be finite and >= 0");

    const int d = s.dims.d[0];
    const double C = s.csit ? s.csit->C : 1.0;
    const auto [trials, draws] = select_trials(s);
    const std::vector<double> power = snr_to_power(s.snr_grid_db);
    const std::size_t na = a_min_values.size(), np = power.size(), nt = trials.size();

    // values[((a * np) + p) * nt + slot] = {frob, aligned, chordal}; NaN marks a failure.
    std::vector<std::array<double, 3>> values(na * np * nt);
    parallel_for(nt, [&](std::size_t slot) {
        const std::uint64_t trial = trials[slot];
        const MultiUserChannel channel = channel::generate_channel(s.dims, s.seed, trial);
        const StreamKey key = StreamKey(s.seed).child({domain::estimate, trial});
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        CMatrix u_star;
        try {
            u_star = ia3::solve_perfect(channel, d).precoders[0];
        } catch (const Error& e) {
            if (!is_numerical(e.code()))
                throw;
            for (std::size_t a = 0; a < na; ++a)
                for (std::size_t p = 0; p < np; ++p)
                    values[(a * np + p) * nt + slot] = {nan, nan, nan};
            return;
        }
        for (std::size_t a = 0; a < na; ++a) {
            CsitProfile profile = CsitProfile::uniform(3, a_min_values[a], CsitModel::Gaussian);
            profile.C = C;
            profile.error_norm = s.error_norm;
            for (std::size_t p = 0; p < np; ++p) {
                auto& slot_value = values[(a * np + p) * nt + slot];
                try {
                    const CsitEstimate est = csit::make_estimate(channel, profile, power[p], key, 0);
                    const PrecoderError err = metrics::precoder_error(ia3::solve_links(est.links, d).precoders[0], u_star);
                    slot_value = {err.frob_sq, err.aligned_sq, err.chordal_sq};
                } catch (const Error& e) {
                    if (!is_numerical(e.code()))
                        throw;
                    slot_value = {nan, nan, nan};
                }
            }
        }
    });

    ScalingStudy study;
    study.trials = nt;
    study.draws = draws;
    for (std::size_t a = 0; a < na; ++a) {
        ScalingRow row;
        row.a_min = a_min_values[a];
        row.P = power;
        for (std::size_t p = 0; p < np; ++p) {
            std::array<std::vector<double>, 3> cols;
            for (std::size_t slot = 0; slot < nt; ++slot) {
                const auto& v = values[(a * np + p) * nt + slot];
                if (std::isnan(v[0])) {
                    ++row.failed;
                    continue;
                }
                for (std::size_t m = 0; m < 3; ++m)
                    cols[m].push_back(v[m]);
            }
            row.frob_sq.push_back(mean_stat(cols[0]));
            row.aligned_sq.push_back(mean_stat(cols[1]));
            row.chordal_sq.push_back(mean_stat(cols[2]));
        }
        row.exponent_frob = log_slope(power, row.frob_sq);
        row.exponent_aligned = log_slope(power, row.aligned_sq);
        row.exponent_chordal = log_slope(power, row.chordal_sq);
        study.rows.push_back(std::move(row));
    }
    return study;
}

} // namespace iasim

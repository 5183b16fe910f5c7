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

#include "iasim/validate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>

#include "iasim/channel.hpp"
#include "iasim/csit.hpp"
#include "iasim/errors.hpp"
#include "iasim/ia3.hpp"
#include "iasim/metrics.hpp"
#include "iasim/numkit.hpp"
#include "iasim/report.hpp"
#include "iasim/rng.hpp"
#include "iasim/scenario.hpp"
#include "iasim/stats.hpp"
#include "iasim/sweep.hpp"

namespace iasim {

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

Outcome verdict(bool ok, const std::string& what, double value, double bound) {
    std::ostringstream os;
    os.precision(4);
    os << what << " = " << value << " (bound " << bound << ")";
    return {ok, os.str()};
}

CMatrix random_matrix(RngStream& rng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix a(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            a(r, c) = rng.complex_normal();
    return a;
}

bool bit_equal(const CMatrix& a, const CMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() &&
           std::memcmp(a.data(), b.data(), sizeof(cdouble) * static_cast<std::size_t>(a.size())) == 0;
}

class Suite {
public:
    Suite(const ValidationOptions& options, const std::function<void(const CheckResult&)>& on_check)
        : options_(options), on_check_(on_check) {}

    int count(int fallback) const { return options_.trials > 0 ? options_.trials : fallback; }
    std::uint64_t seed() const { return options_.seed; }
    StreamKey key(std::uint64_t check) const { return StreamKey(options_.seed).child({domain::validation, check}); }

    template <class Fn>
    void run(const std::string& module, const std::string& name, Fn&& fn) {
        CheckResult r{module, name, false, {}, 0.0};
        const auto start = std::chrono::steady_clock::now();
        try {
            const Outcome o = fn();
            r.passed = o.passed;
            r.detail = o.detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (on_check_)
            on_check_(r);
        report_.checks.push_back(std::move(r));
    }

    ValidationReport take() { return std::move(report_); }

private:
    ValidationOptions options_;
    const std::function<void(const CheckResult&)>& on_check_;
    ValidationReport report_;
};

void numkit_suite(Suite& s) {
    s.run("numkit", "eig_reconstruction", [&] {
        RngStream rng(s.key(1));
        double worst = 0.0;
        for (int t = 0; t < s.count(200); ++t) {
            const CMatrix a = random_matrix(rng, 4, 4);
            const auto e = numkit::eig_general(a);
            CMatrix lambda = CMatrix::Zero(4, 4);
            for (int k = 0; k < 4; ++k)
                lambda(k, k) = e.values[static_cast<std::size_t>(k)];
            const CMatrix rec = e.vectors * lambda * numkit::inverse(e.vectors).value;
            worst = std::max(worst, (rec - a).norm() / a.norm());
        }
        return verdict(worst <= 1e-8, "max relative reconstruction error", worst, 1e-8);
    });

    s.run("numkit", "eig_decomposition_invariants", [&] {
        RngStream rng(s.key(2));
        int bad = 0;
        for (int t = 0; t < s.count(200); ++t) {
            const CMatrix a = random_matrix(rng, 4, 4);
            const auto e = numkit::eig_general(a);
            for (int k = 0; k < 4; ++k) {
                const auto kk = static_cast<std::size_t>(k);
                if (k + 1 < 4 && std::abs(e.values[kk]) + e.gap_tol < std::abs(e.values[kk + 1]))
                    ++bad;
                const CVector v = e.vectors.col(k);
                if (std::abs(v.norm() - 1.0) > 1e-12)
                    ++bad;
                Eigen::Index arg = 0;
                v.cwiseAbs().maxCoeff(&arg);
                if (v(arg).imag() != 0.0 || v(arg).real() <= 0.0)
                    ++bad;
                if ((a * v - e.values[kk] * v).norm() > 1e-9 * a.norm())
                    ++bad;
            }
        }
        return verdict(bad == 0, "violations", bad, 0);
    });

    s.run("numkit", "sort_is_total_order", [&] {
        RngStream rng(s.key(3));
        int bad = 0;
        for (int t = 0; t < s.count(100); ++t) {
            CMatrix a = random_matrix(rng, 4, 4);
            if (t % 4 == 0) { // |lambda| ties
                const CVector ties = (CVector(4) << 1.0, -1.0, cdouble(0, 1), cdouble(0, -1)).finished();
                a = a * ties.asDiagonal() * numkit::inverse(a).value;
            }
            const auto e1 = numkit::eig_general(a);
            const auto e2 = numkit::eig_general(a);
            if (e1.values != e2.values || !bit_equal(e1.vectors, e2.vectors))
                ++bad;
        }
        return verdict(bad == 0, "non-reproducible orderings", bad, 0);
    });

    s.run("numkit", "chordal_right_invariance", [&] {
        RngStream rng(s.key(4));
        double worst = 0.0;
        for (int t = 0; t < s.count(200); ++t) {
            const CMatrix x = random_matrix(rng, 4, 2);
            const CMatrix y = random_matrix(rng, 4, 2);
            const CMatrix r = random_matrix(rng, 2, 2);
            worst = std::max(worst, numkit::chordal_distance(x, x * r));
            worst = std::max(worst, std::abs(numkit::chordal_distance(x * r, y) - numkit::chordal_distance(x, y)));
            worst = std::max(worst, std::abs(numkit::chordal_distance(x, y * r) - numkit::chordal_distance(x, y)));
        }
        return verdict(worst <= 1e-10, "max deviation", worst, 1e-10);
    });

    s.run("numkit", "complement_deterministic", [&] {
        RngStream rng(s.key(5));
        int bad = 0;
        double residual = 0.0;
        for (int t = 0; t < s.count(200); ++t) {
            const CMatrix a = random_matrix(rng, 4, 2);
            const CMatrix q1 = numkit::orthonormal_complement(a);
            const CMatrix q2 = numkit::orthonormal_complement(a);
            if (!bit_equal(q1, q2))
                ++bad;
            residual = std::max(residual, (q1.adjoint() * a).norm());
            residual = std::max(residual, (q1.adjoint() * q1 - CMatrix::Identity(2, 2)).norm());
        }
        return Outcome{bad == 0 && residual <= 1e-10,
                       "mismatches = " + std::to_string(bad) + ", max residual = " + format_number(residual)};
    });
}

void channel_suite(Suite& s) {
    s.run("channel", "normalize_idempotent_and_round_trip", [&] {
        double idem = 0.0, trip = 0.0, norm_dev = 0.0;
        const Dims dims = Dims::square(3, 4, 2);
        for (int t = 0; t < s.count(200); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed(), static_cast<std::uint64_t>(t));
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    const CMatrix& h = ch.links(i, k);
                    const auto n = channel::normalize_link(h);
                    const auto again = channel::normalize_link(n.tilde);
                    idem = std::max(idem, (again.tilde - n.tilde).norm());
                    trip = std::max(trip, (n.reconstruct() - h).norm() / h.norm());
                    norm_dev = std::max({norm_dev, std::abs(n.tilde.norm() - 1.0), std::abs(n.tilde(0, 0).imag())});
                }
        }
        const double worst = std::max({idem, trip, norm_dev});
        return Outcome{worst <= 1e-12, "idempotence " + format_number(idem) + ", round trip " + format_number(trip) +
                                           ", canonical form " + format_number(norm_dev)};
    });

    s.run("channel", "generated_links_full_rank", [&] {
        const Dims dims = Dims::square(1, 4, 2);
        int rank_deficient = 0;
        const int draws = s.count(100000);
        for (int t = 0; t < draws; ++t) {
            const auto ch = channel::generate_channel(dims, s.seed(), static_cast<std::uint64_t>(t));
            if (!(numkit::min_singular_value(ch.links(0, 0)) > 0.0))
                ++rank_deficient;
        }
        return Outcome{rank_deficient == 0,
                       std::to_string(rank_deficient) + " of " + std::to_string(draws) + " draws rank deficient"};
    });
}

void csit_suite(Suite& s) {
    s.run("csit", "gaussian_error_exponent", [&] {
        const std::array<double, 5> power{1e2, 1e3, 1e4, 1e5, 1e6};
        double worst = 0.0;
        for (double A : {0.25, 0.5, 1.0}) {
            std::vector<double> x, y;
            for (double P : power) {
                const double sigma = csit::sigma_from_scaling(A, P);
                std::vector<double> err;
                for (int t = 0; t < s.count(2000); ++t) {
                    RngStream src(s.key(10).child({static_cast<std::uint64_t>(t), 0}));
                    const auto link = channel::normalize_link(random_matrix(src, 4, 4));
                    RngStream rng(s.key(10).child({static_cast<std::uint64_t>(t), 1}));
                    err.push_back((csit::gaussian_perturb(link, sigma, rng) - link.tilde).squaredNorm());
                }
                x.push_back(std::log(P));
                y.push_back(std::log(mean_stat(err).mean));
            }
            worst = std::max(worst, std::abs(linear_fit(x, y).slope + A));
        }
        return verdict(worst <= 0.05, "max |slope + A|", worst, 0.05);
    });

    s.run("csit", "rvq_distortion_decreasing", [&] {
        const std::vector<int> bits{2, 4, 6, 8, 10, 12, 14, 16};
        const auto study = quantizer_study(2, 2, bits, s.count(1000), s.seed());
        bool ok = true;
        std::string detail = "E[d^2]:";
        for (std::size_t r = 0; r < study.rows.size(); ++r) {
            detail += ' ' + format_number(study.rows[r].distortion_sq.mean);
            if (r > 0 && !(study.rows[r].distortion_sq.mean < study.rows[r - 1].distortion_sq.mean))
                ok = false;
        }
        return Outcome{ok, detail};
    });

    s.run("csit", "rvq_output_canonical", [&] {
        int bad = 0;
        for (int t = 0; t < s.count(200); ++t) {
            RngStream src(s.key(11).child({static_cast<std::uint64_t>(t), 0}));
            const auto link = channel::normalize_link(random_matrix(src, 2 + t % 3, 2 + (t / 3) % 3));
            RngStream cb(s.key(11).child({static_cast<std::uint64_t>(t), 1}));
            const auto q = csit::rvq_quantize(link, t % 10, cb);
            if (std::abs(q.word.norm() - 1.0) > 1e-12 || q.word(0, 0).imag() != 0.0 || q.word(0, 0).real() < 0.0)
                ++bad;
        }
        return verdict(bad == 0, "non-canonical words", bad, 0);
    });
}

void ia3_suite(Suite& s) {
    const Dims dims = Dims::square(3, 4, 2);
    const int d = 2;

    s.run("ia3", "perfect_csi_exactness", [&] {
        double residual = 0.0, span = 0.0, norms = 0.0;
        for (int t = 0; t < s.count(1000); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 1, static_cast<std::uint64_t>(t));
            const auto sol = ia3::solve_perfect(ch, d);
            for (int i = 0; i < 3; ++i) {
                for (int j = 0; j < 3; ++j)
                    if (j != i)
                        residual = std::max(residual, (sol.filters[i].adjoint() * ch.links(i, j) * sol.precoders[j]).norm());
                norms = std::max({norms, std::abs(sol.precoders[i].norm() - 1.0), std::abs(sol.filters[i].norm() - 1.0)});
                const int a = (i + 1) % 3, b = (i + 2) % 3;
                span = std::max(span, numkit::chordal_distance(ch.links(i, a) * sol.precoders[a],
                                                               ch.links(i, b) * sol.precoders[b]));
            }
        }
        return Outcome{residual <= 1e-8 && span <= 1e-9 && norms <= 1e-12,
                       "max leakage norm " + format_number(residual) + ", max span distance " + format_number(span) +
                           ", max unit-norm deviation " + format_number(norms)};
    });

    s.run("ia3", "eigenvector_fixed_point", [&] {
        double worst = 0.0;
        for (int t = 0; t < s.count(500); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 2, static_cast<std::uint64_t>(t));
            const auto links = channel::normalized_links(ch);
            const auto sol = ia3::solve_links(links, d);
            const CMatrix y = ia3::compute_cascade(links);
            CMatrix lambda = CMatrix::Zero(d, d);
            for (int k = 0; k < d; ++k)
                lambda(k, k) = sol.cascade_eigs[static_cast<std::size_t>(k)];
            worst = std::max(worst, (y * sol.precoders[0] - sol.precoders[0] * lambda).norm());
        }
        return verdict(worst <= 1e-9, "max ||Y U1 - U1 L||", worst, 1e-9);
    });

    s.run("ia3", "scaling_invariance", [&] {
        RngStream rng(s.key(20));
        double worst = 0.0;
        for (int t = 0; t < s.count(200); ++t) {
            auto ch = channel::generate_channel(dims, s.seed() + 3, static_cast<std::uint64_t>(t));
            const auto base = ia3::solve_perfect(ch, d);
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k) {
                    const double mag = std::pow(10.0, 2.0 * rng.uniform() - 1.0);
                    ch.links(i, k) *= std::polar(mag, 2.0 * M_PI * rng.uniform());
                }
            const auto scaled = ia3::solve_perfect(ch, d);
            for (int j = 0; j < 3; ++j)
                worst = std::max({worst, (scaled.precoders[j] - base.precoders[j]).norm(),
                                  (scaled.filters[j] - base.filters[j]).norm()});
        }
        return verdict(worst <= 1e-10, "max change", worst, 1e-10);
    });

    s.run("ia3", "distributed_consistency", [&] {
        CsitProfile profile = CsitProfile::uniform(3, 0.5);
        int bad = 0;
        for (int t = 0; t < s.count(200); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 4, static_cast<std::uint64_t>(t));
            const auto est = csit::make_estimate(ch, profile, 100.0, s.key(21).child(static_cast<std::uint64_t>(t)), 0);
            std::vector<CsitEstimate> same(3, est);
            for (int j = 0; j < 3; ++j)
                same[static_cast<std::size_t>(j)].owner = j;
            const auto dist = ia3::solve_distributed(same, d);
            const auto ref = ia3::solve_links(est.links, d);
            for (int j = 0; j < 3; ++j)
                if (!bit_equal(dist.used_precoders[j], ref.precoders[j]) ||
                    !bit_equal(dist.used_precoders[j], dist.per_tx_solutions[j]->precoders[j]))
                    ++bad;
        }
        return verdict(bad == 0, "mismatching precoders", bad, 0);
    });

    s.run("ia3", "distributed_independence", [&] {
        CsitProfile profile = CsitProfile::uniform(3, 0.5);
        int bad = 0;
        for (int t = 0; t < s.count(200); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 5, static_cast<std::uint64_t>(t));
            auto est = csit::make_estimates(ch, profile, 100.0, s.key(22).child(static_cast<std::uint64_t>(t)));
            const auto before = ia3::solve_distributed(est, d);
            est[1] = csit::make_estimate(ch, profile, 100.0, s.key(23).child(static_cast<std::uint64_t>(t)), 1);
            const auto after = ia3::solve_distributed(est, d);
            if (!bit_equal(before.used_precoders[0], after.used_precoders[0]) ||
                !bit_equal(before.used_precoders[2], after.used_precoders[2]) ||
                bit_equal(before.used_precoders[1], after.used_precoders[1]))
                ++bad;
        }
        return verdict(bad == 0, "violations", bad, 0);
    });

    s.run("ia3", "filter_rejection_monotone", [&] {
        const std::array<double, 6> eps{0.0, 0.01, 0.02, 0.05, 0.1, 0.2};
        std::array<int, 6> rejected{};
        for (int t = 0; t < s.count(1000); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 6, static_cast<std::uint64_t>(t));
            for (std::size_t e = 0; e < eps.size(); ++e)
                rejected[e] += ia3::conditioning_filter(ch, eps[e]) ? 0 : 1;
        }
        bool ok = rejected[0] == 0;
        std::string detail = "rejections:";
        for (std::size_t e = 0; e < eps.size(); ++e) {
            detail += ' ' + std::to_string(rejected[e]);
            if (e > 0 && rejected[e] < rejected[e - 1])
                ok = false;
        }
        return Outcome{ok, detail};
    });
}

void metrics_suite(Suite& s) {
    const Dims dims = Dims::square(3, 4, 2);

    s.run("metrics", "rate_nondecreasing_without_leakage", [&] {
        int bad = 0;
        for (int t = 0; t < s.count(200); ++t) {
            const auto ch = channel::generate_channel(dims, s.seed() + 7, static_cast<std::uint64_t>(t));
            const auto sol = ia3::solve_perfect(ch, 2);
            for (int i = 0; i < 3; ++i) {
                double prev = -1.0;
                for (int db = 0; db <= 60; db += 5) {
                    const double r = metrics::rate_user(ch, sol.precoders, sol.filters, metrics::db_to_linear(db), i);
                    if (r < prev - 1e-12 * std::max(1.0, prev))
                        ++bad;
                    prev = r;
                }
            }
        }
        return verdict(bad == 0, "decreasing steps", bad, 0);
    });

    s.run("metrics", "leakage_scales_with_link_gain", [&] {
        RngStream rng(s.key(30));
        double worst = 0.0;
        for (int t = 0; t < s.count(200); ++t) {
            auto ch = channel::generate_channel(dims, s.seed() + 8, static_cast<std::uint64_t>(t));
            std::array<CMatrix, 3> u, g;
            for (int j = 0; j < 3; ++j) {
                u[j] = random_matrix(rng, 4, 2);
                u[j] /= u[j].norm();
                g[j] = random_matrix(rng, 4, 2);
                g[j] /= g[j].norm();
            }
            const int i = t % 3, j = (i + 1 + (t / 3) % 2) % 3;
            const double term = (g[i].adjoint() * ch.links(i, j) * u[j]).squaredNorm();
            const double before = metrics::leakage(ch, u, g);
            const cdouble c = std::polar(0.2 + 3.0 * rng.uniform(), 2.0 * M_PI * rng.uniform());
            ch.links(i, j) *= c;
            const double after = metrics::leakage(ch, u, g);
            worst = std::max(worst, std::abs(after - (before + (std::norm(c) - 1.0) * term)) / std::max(after, 1e-300));
        }
        return verdict(worst <= 1e-10, "max relative deviation", worst, 1e-10);
    });

    s.run("metrics", "dof_slope_linear", [&] {
        RngStream rng(s.key(31));
        double worst = 0.0;
        for (int t = 0; t < s.count(100); ++t) {
            std::vector<RatePoint> pts;
            for (int db = 0; db <= 60; db += 10) {
                const double a = rng.normal() + 2.0 * db / 10.0, b = 3.0 * rng.uniform() + 0.1 * db;
                pts.push_back({static_cast<double>(db), {a, b, a + b}, {0.0, 0.0, 0.0}});
            }
            const auto dof = metrics::dof_slope(pts, 2 + t % 6);
            worst = std::max(worst, std::abs(dof.per_user_slope[2] - dof.per_user_slope[0] - dof.per_user_slope[1]));
        }
        return verdict(worst <= 1e-12, "max deviation", worst, 1e-12);
    });
}

Scenario small_scenario(std::uint64_t seed, int trials, std::optional<CsitProfile> csit) {
    Scenario sc;
    sc.name = "validation";
    sc.dims = Dims::square(3, 4, 2);
    sc.snr_grid_db = {0, 10, 20, 30, 40};
    sc.trials = trials;
    sc.seed = seed;
    sc.csit = std::move(csit);
    return sc;
}

void harness_suite(Suite& s) {
    s.run("harness", "scenario_text_round_trip", [&] {
        Scenario weak = golden_scenario();
        weak.csit = single_weak_link_profile();
        weak.filter_eps = 0.05;
        weak.receiver = Receiver::Mmse;
        const bool ok = parse_scenario(golden_scenario().to_text()) == golden_scenario() && parse_scenario(weak.to_text()) == weak;
        return Outcome{ok, ok ? "canonical text reproduces both scenarios" : "round trip changed the scenario"};
    });

    s.run("harness", "end_to_end_determinism", [&] {
        const Scenario sc = small_scenario(s.seed(), s.count(60), single_weak_link_profile());
        const auto a = run_sweep(sc);
        const auto b = run_sweep(sc);
        const bool ok = a.digest() == b.digest() && format_csv(a) == format_csv(b) && render_svg(a) == render_svg(b);
        return Outcome{ok, "digests " + hex64(a.digest()) + " / " + hex64(b.digest())};
    });

    s.run("harness", "perfect_csit_dominance", [&] {
        const int n = s.count(150);
        const auto perfect = run_sweep(small_scenario(s.seed(), n, std::nullopt));
        int bad = 0;
        double worst = -1e300;
        for (const CsitProfile& profile : {CsitProfile::uniform(3, 1.0), CsitProfile::uniform(3, 0.5), single_weak_link_profile()}) {
            const auto imperfect = run_sweep(small_scenario(s.seed(), n, profile));
            for (std::size_t p = 0; p < perfect.points.size(); ++p)
                for (std::size_t u = 0; u < 3; ++u) {
                    const auto& a = perfect.points[p];
                    const auto& b = imperfect.points[p];
                    const double se = std::hypot(a.per_user_stderr[u], b.per_user_stderr[u]);
                    const double excess = (b.per_user_rate[u] - a.per_user_rate[u]) / std::max(se, 1e-300);
                    worst = std::max(worst, excess);
                    if (excess > 2.0)
                        ++bad;
                }
        }
        return Outcome{bad == 0, "largest imperfect excess " + format_number(worst) + " standard errors (bound 2)"};
    });

    s.run("harness", "trial_count_consistency", [&] {
        const int n = s.count(100);
        const auto small = run_sweep(small_scenario(s.seed(), n, CsitProfile::uniform(3, 1.0)));
        const auto large = run_sweep(small_scenario(s.seed(), 2 * n, CsitProfile::uniform(3, 1.0)));
        double worst = 0.0;
        for (std::size_t p = 0; p < small.points.size(); ++p)
            for (std::size_t u = 0; u < 3; ++u) {
                const double se = small.points[p].per_user_stderr[u];
                const double diff = std::abs(large.points[p].per_user_rate[u] - small.points[p].per_user_rate[u]);
                worst = std::max(worst, diff / std::max(se, 1e-300));
            }
        return verdict(worst < 3.0, "max shift in standard errors", worst, 3.0);
    });
}

} // namespace

std::size_t ValidationReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

ValidationReport run_validation(const ValidationOptions& options, const std::function<void(const CheckResult&)>& on_check) {
    Suite suite(options, on_check);
    numkit_suite(suite);
    channel_suite(suite);
    csit_suite(suite);
    ia3_suite(suite);
    metrics_suite(suite);
    harness_suite(suite);
    return suite.take();
}

} // namespace iasim

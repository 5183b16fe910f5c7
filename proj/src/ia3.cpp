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

#include "iasim/ia3.hpp"

#include <cmath>
#include <string>

#include "iasim/errors.hpp"

namespace iasim {

bool DistributedSolution::ok() const noexcept {
    for (const auto& e : errors)
        if (!e.empty())
            return false;
    return true;
}

bool DistributedSolution::any_degenerate() const noexcept {
    for (const auto& s : per_tx_solutions)
        if (s && s->degenerate)
            return true;
    return false;
}

namespace ia3 {

namespace {

std::string link_name(int i, int k) {
    return "H" + std::to_string(i + 1) + std::to_string(k + 1);
}

void check_square_grid(const LinkGrid& links, int d) {
    require(links.users() == 3, ErrorCode::DimensionMismatch, "ia3: the closed-form solver needs K = 3");
    require(d > 0, ErrorCode::InvalidArgument, "ia3: d must be positive");
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            const auto& h = links(i, k);
            require(h.rows() == 2 * d && h.cols() == 2 * d, ErrorCode::DimensionMismatch,
                    "ia3: link " + link_name(i, k) + " must be " + std::to_string(2 * d) + "x" + std::to_string(2 * d));
        }
}

CMatrix invert_link(const LinkGrid& links, int i, int k) {
    try {
        return numkit::inverse(links(i, k)).value;
    } catch (const SingularMatrix& e) {
        throw SingularMatrix("ia3: link " + link_name(i, k) + " is singular (" + e.what() + ")", e.min_singular_value());
    }
}

CMatrix unit_frobenius(const CMatrix& a) {
    const double n = a.norm();
    if (!(n > 0.0) || !std::isfinite(n))
        throw NumericalFailure("ia3: precoder chain produced a zero or non-finite matrix");
    return a / n;
}

} // namespace

CMatrix compute_cascade(const LinkGrid& links) {
    require(links.users() == 3, ErrorCode::DimensionMismatch, "compute_cascade: needs K = 3");
    // Y = H31^-1 H32 H12^-1 H13 H23^-1 H21
    const CMatrix inv31 = invert_link(links, 2, 0);
    const CMatrix inv12 = invert_link(links, 0, 1);
    const CMatrix inv23 = invert_link(links, 1, 2);
    return inv31 * links(2, 1) * inv12 * links(0, 2) * inv23 * links(1, 0);
}

IaSolution solve_links(const LinkGrid& links, int d) {
    check_square_grid(links, d);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            numkit::require_finite(links(i, k), "ia3: link " + link_name(i, k));

    const CMatrix inv31 = invert_link(links, 2, 0);
    const CMatrix inv12 = invert_link(links, 0, 1);
    const CMatrix inv23 = invert_link(links, 1, 2);
    const CMatrix y = inv31 * links(2, 1) * inv12 * links(0, 2) * inv23 * links(1, 0);

    const auto eig = numkit::eig_general(y);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

    IaSolution sol;
    sol.cascade_eigs = eig.values;
    sol.min_eig_gap = eig.min_gap;
    sol.degenerate = eig.degenerate;

    auto& U = sol.precoders;
    U[0] = eig.vectors.leftCols(d) * inv_sqrt_d;
    U[2] = unit_frobenius(inv23 * links(1, 0) * U[0]);
    U[1] = unit_frobenius(inv12 * links(0, 2) * U[2]);

    // At RX i both interferers occupy the same d-dimensional subspace, so the
    // complement of either one is the zero-forcing filter.
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3;
        const CMatrix q = numkit::orthonormal_complement(links(i, j) * U[static_cast<std::size_t>(j)]);
        if (q.cols() != d)
            throw NumericalFailure("ia3: interference at RX " + std::to_string(i + 1) + " does not span " + std::to_string(d) + " dimensions");
        sol.filters[static_cast<std::size_t>(i)] = q * inv_sqrt_d;
    }
    return sol;
}

IaSolution solve_perfect(const MultiUserChannel& channel, int d) {
    return solve_links(channel::normalized_links(channel), d);
}

DistributedSolution solve_distributed(std::span<const CsitEstimate> estimates, int d) {
    require(estimates.size() == 3, ErrorCode::DimensionMismatch, "solve_distributed: need one estimate per TX");
    DistributedSolution out;
    for (std::size_t j = 0; j < 3; ++j) {
        require(estimates[j].owner == static_cast<int>(j), ErrorCode::InvalidArgument,
                "solve_distributed: estimate " + std::to_string(j) + " belongs to another TX");
        try {
            IaSolution sol = solve_links(estimates[j].links, d);
            out.used_precoders[j] = sol.precoders[j];
            out.per_tx_solutions[j] = std::move(sol);
        } catch (const Error& e) {
            out.errors[j] = std::string(error_code_name(e.code())) + ": " + e.what();
        }
    }
    return out;
}

bool conditioning_filter(const MultiUserChannel& channel, double eps) {
    if (eps <= 0.0)
        return true;
    const LinkGrid links = channel::normalized_links(channel);
    for (int i = 0; i < links.users(); ++i)
        for (int k = 0; k < links.users(); ++k)
            if (numkit::min_singular_value(links(i, k)) < eps)
                return false;
    try {
        return numkit::eig_general(compute_cascade(links)).min_gap >= eps;
    } catch (const Error&) {
        return false;
    }
}

} // namespace ia3
} // namespace iasim

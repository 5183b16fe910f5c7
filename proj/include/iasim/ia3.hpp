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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "iasim/channel.hpp"
#include "iasim/csit.hpp"
#include "iasim/numkit.hpp"

namespace iasim {

// Closed-form alignment solution for the 3-user square MIMO IC (M = N = 2d).
struct IaSolution {
    std::array<CMatrix, 3> precoders; // U_j, 2d x d, ||U_j||_F = 1
    std::array<CMatrix, 3> filters;   // G_i, 2d x d, ||G_i||_F = 1
    std::vector<cdouble> cascade_eigs;
    double min_eig_gap = 0.0;
    bool degenerate = false;
};

struct DistributedSolution {
    // used_precoders[j] = U_j^{(j)}, the precoder TX j computes for itself.
    std::array<CMatrix, 3> used_precoders;
    std::array<std::optional<IaSolution>, 3> per_tx_solutions;
    std::array<std::string, 3> errors; // empty when the TX succeeded

    bool ok() const noexcept;
    bool any_degenerate() const noexcept;
};

namespace ia3 {

// Y = H31^-1 H32 H12^-1 H13 H23^-1 H21 (1-based link names). A singular inverted
// link throws SingularMatrix naming the link.
CMatrix compute_cascade(const LinkGrid& links);

// Full pipeline on an arbitrary link grid (normalized channel or a TX's estimate):
// U1 from the d dominant eigenvectors of Y, U3 and U2 chained through the inverses,
// G_i spanning the complement of the aligned interference at RX i.
IaSolution solve_links(const LinkGrid& links, int d);

// solve_links on the normalized true channel.
IaSolution solve_perfect(const MultiUserChannel& channel, int d);

// Each TX solves on its own estimate; per-TX failures are recorded, not thrown.
DistributedSolution solve_distributed(std::span<const CsitEstimate> estimates, int d);

// Membership in H^eps: every normalized link has sigma_min >= eps and the cascade
// eigenvalues are pairwise separated by at least eps.
bool conditioning_filter(const MultiUserChannel& channel, double eps);

} // namespace ia3
} // namespace iasim

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

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace iasim {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Dense complex kernel used by every other module. All functions are pure.
namespace numkit {

// Relative tolerance for eigenvalue ties and the degenerate-spectrum flag.
inline constexpr double kGapTolerance = 1e-9;
// A matrix is singular when its smallest singular value is below this times its Frobenius norm.
inline constexpr double kSingularTolerance = 1e-12;

// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const CMatrix& a, std::string_view what);

CMatrix matmul(const CMatrix& a, const CMatrix& b);

struct Inverse {
    CMatrix value;
    double min_singular_value = 0.0;
};

// Throws SingularMatrix when sigma_min(a) < 1e-12 * ||a||_F.
Inverse inverse(const CMatrix& a);

double min_singular_value(const CMatrix& a);

struct EigDecomposition {
    // Sorted by descending |lambda|; near-ties (within gap_tol) by descending
    // real part, then descending imaginary part.
    std::vector<cdouble> values;
    // Column k is the unit-norm eigenvector of values[k], with its largest-magnitude
    // entry real and positive.
    CMatrix vectors;
    // min_{i != j} |lambda_i - lambda_j|; +inf for 1x1 input.
    double min_gap = 0.0;
    double gap_tol = 0.0;
    bool degenerate = false;
};

// General (non-Hermitian) eigendecomposition. Hessenberg reduction followed by
// shifted QR, at most 100*n iterations; throws NumericalFailure otherwise.
// A spectrum whose min_gap is below gap_tol_rel * ||a||_F is flagged degenerate.
EigDecomposition eig_general(const CMatrix& a, double gap_tol_rel = kGapTolerance);

// Scales v to unit 2-norm with its largest-magnitude entry real and positive.
CVector canonical_phase(const CVector& v);

// Orthonormal basis of span(a). Throws RankDeficient if a lacks full column rank.
CMatrix orthonormal_basis(const CMatrix& a);

// N x (N - rank(a)) matrix Q with Q^H Q = I and Q^H a = 0.
// Throws EmptyComplement when a has full row rank.
CMatrix orthonormal_complement(const CMatrix& a);

// d with d^2 = r - trace(P_a P_b), evaluated as ||(I - P_a) Q_b||_F^2 to avoid
// cancellation near zero. Both inputs need full column rank.
double chordal_distance(const CMatrix& a, const CMatrix& b);

inline double frobenius_norm(const CMatrix& a) { return a.norm(); }

} // namespace numkit
} // namespace iasim

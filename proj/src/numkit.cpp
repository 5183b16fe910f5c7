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

#include "iasim/numkit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "iasim/errors.hpp"

namespace iasim::numkit {

namespace {

std::string shape(const CMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_square(const CMatrix& a, std::string_view op) {
    if (a.rows() != a.cols() || a.rows() == 0)
        throw Error(ErrorCode::DimensionMismatch, std::string(op) + ": expected a non-empty square matrix, got " + shape(a));
}

// Sorts idx[first, last) by key descending, then splits into runs whose consecutive
// keys differ by at most tol and hands each run of length > 1 to refine.
template <class Key, class Refine>
void sort_with_ties(std::vector<int>& idx, std::size_t first, std::size_t last, double tol, Key key, Refine refine) {
    std::sort(idx.begin() + first, idx.begin() + last, [&](int a, int b) {
        const double ka = key(a), kb = key(b);
        if (ka != kb)
            return ka > kb;
        return a < b;
    });
    std::size_t run = first;
    for (std::size_t i = first + 1; i <= last; ++i) {
        if (i == last || key(idx[i - 1]) - key(idx[i]) > tol) {
            if (i - run > 1)
                refine(run, i);
            run = i;
        }
    }
}

} // namespace

void require_finite(const CMatrix& a, std::string_view what) {
    if (!a.allFinite())
        throw Error(ErrorCode::InvalidArgument, std::string(what) + ": matrix has non-finite entries");
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "matmul: " + shape(a) + " * " + shape(b));
    return a * b;
}

double min_singular_value(const CMatrix& a) {
    if (a.size() == 0)
        return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

Inverse inverse(const CMatrix& a) {
    require_square(a, "inverse");
    require_finite(a, "inverse");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    const double scale = a.norm();
    if (!(smin >= kSingularTolerance * scale) || scale == 0.0)
        throw SingularMatrix("inverse: smallest singular value " + std::to_string(smin) + " below tolerance", smin);
    Eigen::VectorXd inv_s = s.cwiseInverse();
    return {svd.matrixV() * inv_s.asDiagonal() * svd.matrixU().adjoint(), smin};
}

CVector canonical_phase(const CVector& v) {
    const double n = v.norm();
    if (n == 0.0)
        throw Error(ErrorCode::InvalidArgument, "canonical_phase: zero vector");
    CVector u = v / n;
    double peak = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i)
        peak = std::max(peak, std::abs(u(i)));
    // First index reaching the peak, with a relative slack so exact ties resolve
    // to the lowest index regardless of rounding.
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) >= peak * (1.0 - 1e-12)) {
            pivot = i;
            break;
        }
    }
    const cdouble phase = std::conj(u(pivot)) / std::abs(u(pivot));
    u *= phase;
    u(pivot) = cdouble(std::abs(u(pivot)), 0.0);
    return u;
}

EigDecomposition eig_general(const CMatrix& a, double gap_tol_rel) {
    require_square(a, "eig_general");
    require_finite(a, "eig_general");
    const Eigen::Index n = a.rows();

    Eigen::ComplexEigenSolver<CMatrix> solver;
    solver.setMaxIterations(100 * n);
    solver.compute(a, true);
    if (solver.info() != Eigen::Success)
        throw NumericalFailure("eig_general: QR iteration did not converge within " + std::to_string(100 * n) + " iterations");

    const auto& lambda = solver.eigenvalues();
    const double tol = gap_tol_rel * a.norm();

    std::vector<int> idx(static_cast<std::size_t>(n));
    std::iota(idx.begin(), idx.end(), 0);
    auto modulus = [&](int i) { return std::abs(lambda(i)); };
    auto real = [&](int i) { return lambda(i).real(); };
    auto imag = [&](int i) { return lambda(i).imag(); };
    sort_with_ties(idx, 0, idx.size(), tol, modulus, [&](std::size_t f, std::size_t l) {
        sort_with_ties(idx, f, l, tol, real, [&](std::size_t f2, std::size_t l2) {
            sort_with_ties(idx, f2, l2, 0.0, imag, [](std::size_t, std::size_t) {});
        });
    });

    EigDecomposition out;
    out.values.reserve(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const int src = idx[static_cast<std::size_t>(k)];
        out.values.push_back(lambda(src));
        out.vectors.col(k) = canonical_phase(solver.eigenvectors().col(src));
    }
    out.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.values.size(); ++i)
        for (std::size_t j = i + 1; j < out.values.size(); ++j)
            out.min_gap = std::min(out.min_gap, std::abs(out.values[i] - out.values[j]));
    out.gap_tol = tol;
    out.degenerate = out.min_gap < tol;
    return out;
}

CMatrix orthonormal_basis(const CMatrix& a) {
    require_finite(a, "orthonormal_basis");
    if (a.cols() == 0 || a.cols() > a.rows())
        throw Error(ErrorCode::RankDeficient, "orthonormal_basis: " + shape(a) + " cannot have full column rank");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) >= kSingularTolerance * a.norm()) || a.norm() == 0.0)
        throw Error(ErrorCode::RankDeficient, "orthonormal_basis: input is rank deficient");
    return svd.matrixU();
}

CMatrix orthonormal_complement(const CMatrix& a) {
    require_finite(a, "orthonormal_complement");
    const Eigen::Index n = a.rows();
    if (n == 0)
        throw Error(ErrorCode::DimensionMismatch, "orthonormal_complement: empty matrix");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double tol = kSingularTolerance * a.norm();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol)
            ++rank;
    if (rank >= n)
        throw EmptyComplement("orthonormal_complement: " + shape(a) + " has full row rank");
    return svd.matrixU().rightCols(n - rank);
}

double chordal_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "chordal_distance: " + shape(a) + " vs " + shape(b));
    const CMatrix qa = orthonormal_basis(a);
    const CMatrix qb = orthonormal_basis(b);
    const CMatrix residual = qb - qa * (qa.adjoint() * qb);
    return residual.norm();
}

} // namespace iasim::numkit

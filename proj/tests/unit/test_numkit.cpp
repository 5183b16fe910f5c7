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

#include <doctest.h>

#include "iasim/errors.hpp"
#include "iasim/numkit.hpp"
#include "iasim/rng.hpp"

using namespace iasim;
using namespace iasim::numkit;

namespace {

CMatrix random_matrix(RngStream& rng, int rows, int cols) {
    CMatrix a(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            a(r, c) = rng.complex_normal();
    return a;
}

CMatrix diag(std::initializer_list<cdouble> v) {
    CMatrix a = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    Eigen::Index k = 0;
    for (auto x : v) {
        a(k, k) = x;
        ++k;
    }
    return a;
}

// Entry-wise triple loop, independent of Eigen's product kernels.
CMatrix naive_product(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) {
            cdouble s = 0.0;
            for (Eigen::Index k = 0; k < a.cols(); ++k)
                s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

} // namespace

TEST_SUITE("numkit") {

TEST_CASE("matmul") {
    RngStream rng(StreamKey(1));
    const CMatrix x = random_matrix(rng, 2, 3);
    CHECK(matmul(CMatrix::Identity(2, 2), x) == x);
    CHECK(matmul(diag({2, 3}), diag({5, 7})) == diag({10, 21}));
    for (int t = 0; t < 20; ++t) {
        const CMatrix a = random_matrix(rng, 4, 4), b = random_matrix(rng, 4, 4);
        CHECK((matmul(a, b) - naive_product(a, b)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(matmul(CMatrix::Zero(2, 3), CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("inverse") {
    CHECK(inverse(CMatrix::Identity(4, 4)).value.isApprox(CMatrix::Identity(4, 4), 1e-15));
    const auto d = inverse(diag({2, 4}));
    CHECK((d.value - diag({0.5, 0.25})).norm() <= 1e-15);
    CHECK(d.min_singular_value == doctest::Approx(2.0));

    RngStream rng(StreamKey(2));
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = random_matrix(rng, 4, 4);
        CHECK((a * inverse(a).value - CMatrix::Identity(4, 4)).norm() <= 1e-10);
    }

    CMatrix singular = random_matrix(rng, 4, 4);
    singular.col(3) = singular.col(0) + 2.0 * singular.col(1);
    try {
        inverse(singular);
        FAIL("expected SingularMatrix");
    } catch (const SingularMatrix& e) {
        CHECK(e.code() == ErrorCode::SingularMatrix);
        CHECK(e.min_singular_value() < 1e-12 * singular.norm());
    }
    CHECK_THROWS_AS(inverse(CMatrix::Zero(2, 3)), Error);
}

TEST_CASE("eig_general reference examples") {
    const auto e = eig_general(diag({3, 1}));
    REQUIRE(e.values.size() == 2);
    CHECK(std::abs(e.values[0] - cdouble(3)) < 1e-14);
    CHECK(std::abs(e.values[1] - cdouble(1)) < 1e-14);
    CHECK((e.vectors - CMatrix::Identity(2, 2)).norm() < 1e-14);

    CMatrix swap(2, 2);
    swap << 0, 1, 1, 0;
    const auto s = eig_general(swap);
    CHECK(std::abs(s.values[0] - cdouble(1)) < 1e-14);
    CHECK(std::abs(s.values[1] - cdouble(-1)) < 1e-14);
    CHECK(s.min_gap == doctest::Approx(2.0));
    CHECK_FALSE(s.degenerate);
}

TEST_CASE("eig_general tie-break on equal modulus") {
    // |lambda| = 1 for all four; order by real part, then imaginary part.
    const auto e = eig_general(diag({cdouble(0, -1), -1.0, cdouble(0, 1), 1.0}));
    CHECK(std::abs(e.values[0] - cdouble(1, 0)) < 1e-14);
    CHECK(std::abs(e.values[1] - cdouble(0, 1)) < 1e-14);
    CHECK(std::abs(e.values[2] - cdouble(0, -1)) < 1e-14);
    CHECK(std::abs(e.values[3] - cdouble(-1, 0)) < 1e-14);
}

TEST_CASE("eig_general residual, order and canonical phase") {
    RngStream rng(StreamKey(3));
    for (int t = 0; t < 100; ++t) {
        const CMatrix a = random_matrix(rng, 4, 4);
        const auto e = eig_general(a);
        for (int k = 0; k < 4; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            const CVector v = e.vectors.col(k);
            CHECK((a * v - e.values[kk] * v).norm() <= 1e-9 * a.norm());
            CHECK(v.norm() == doctest::Approx(1.0).epsilon(1e-12));
            Eigen::Index arg;
            v.cwiseAbs().maxCoeff(&arg);
            CHECK(v(arg).imag() == 0.0);
            CHECK(v(arg).real() > 0.0);
            if (k < 3)
                CHECK(std::abs(e.values[kk]) >= std::abs(e.values[kk + 1]) - e.gap_tol);
        }
        CMatrix lambda = CMatrix::Zero(4, 4);
        for (int k = 0; k < 4; ++k)
            lambda(k, k) = e.values[static_cast<std::size_t>(k)];
        CHECK((e.vectors * lambda * inverse(e.vectors).value - a).norm() <= 1e-8 * a.norm());
    }
}

TEST_CASE("eig_general flags repeated eigenvalues") {
    const auto e = eig_general(diag({2, 2, 3, 3}));
    CHECK(e.degenerate);
    CHECK(e.min_gap < e.gap_tol);
    CHECK_FALSE(eig_general(diag({1, 2, 3, 4})).degenerate);
}

TEST_CASE("canonical_phase") {
    CVector v(3);
    v << cdouble(0.1, 0.2), cdouble(0, -2), cdouble(0.5, 0);
    const CVector c = canonical_phase(v);
    CHECK(std::abs(c(1) - cdouble(2.0 / v.norm(), 0)) < 1e-15);
    CHECK(c(1).imag() == 0.0);
    CHECK((c - v * cdouble(0, 1) / v.norm()).norm() < 1e-15);
    CHECK_THROWS_AS(canonical_phase(CVector::Zero(3)), Error);
}

TEST_CASE("orthonormal_complement") {
    CMatrix e1(2, 1);
    e1 << 1, 0;
    const CMatrix q = orthonormal_complement(e1);
    REQUIRE(q.cols() == 1);
    CHECK(std::abs(q(0, 0)) < 1e-15);
    CHECK(std::abs(q(1, 0)) == doctest::Approx(1.0));

    CHECK_THROWS_AS(orthonormal_complement(CMatrix::Identity(4, 4)), EmptyComplement);

    RngStream rng(StreamKey(4));
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = random_matrix(rng, 4, 2);
        const CMatrix c = orthonormal_complement(a);
        REQUIRE(c.cols() == 2);
        CHECK((c.adjoint() * c - CMatrix::Identity(2, 2)).norm() <= 1e-10);
        CHECK((c.adjoint() * a).norm() <= 1e-10);
        CHECK(orthonormal_complement(a) == c);
    }

    // rank 1 input in C^3 leaves a 2-dimensional complement
    CMatrix r1(3, 2);
    r1 << 1, 2, cdouble(0, 1), cdouble(0, 2), 0, 0;
    CHECK(orthonormal_complement(r1).cols() == 2);
}

TEST_CASE("chordal_distance") {
    RngStream rng(StreamKey(5));
    const CMatrix x = random_matrix(rng, 4, 2);
    CHECK(chordal_distance(x, x) <= 1e-12);

    CMatrix e1(2, 1), e2(2, 1);
    e1 << 1, 0;
    e2 << 0, 1;
    CHECK(chordal_distance(e1, e2) == doctest::Approx(1.0));

    for (int t = 0; t < 50; ++t) {
        const CMatrix a = random_matrix(rng, 4, 2), r = random_matrix(rng, 2, 2), b = random_matrix(rng, 4, 2);
        CHECK(chordal_distance(a, a * r) <= 1e-10);
        CHECK(std::abs(chordal_distance(a * r, b) - chordal_distance(a, b)) <= 1e-10);
        // squared distance equals r - trace(Pa Pb)
        const CMatrix qa = orthonormal_basis(a), qb = orthonormal_basis(b);
        const double trace = (qa * qa.adjoint() * qb * qb.adjoint()).trace().real();
        CHECK(std::pow(chordal_distance(a, b), 2) == doctest::Approx(2.0 - trace).epsilon(1e-10));
    }

    CMatrix deficient = random_matrix(rng, 4, 2);
    deficient.col(1) = 3.0 * deficient.col(0);
    CHECK_THROWS_AS(chordal_distance(deficient, x), Error);
    CHECK_THROWS_AS(chordal_distance(x, random_matrix(rng, 4, 1)), Error);
}

TEST_CASE("non-finite input is rejected") {
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(require_finite(a, "test"), Error);
    CHECK_THROWS_AS(eig_general(a), Error);
}
}

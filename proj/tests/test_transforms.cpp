// Copyright 2026 The qwe Authors
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

#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qwe/errors.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;

namespace {

ExactMatrix exact_of(TransformKind kind, int n) {
    return build_transform(kind, n, Precision::exact).exact();
}

std::vector<mpq_class> q(std::initializer_list<const char *> xs) {
    std::vector<mpq_class> out;
    for (const char *x : xs) out.push_back(parse_rational(x));
    return out;
}

}  // namespace

TEST_CASE("M at n = 1 and T~ at n = 2") {
    auto m = exact_of(TransformKind::M, 1);
    CHECK(m.at(0, 0) == mpq_class(1, 2));
    CHECK(m.at(0, 1) == mpq_class(1, 2));
    CHECK(m.at(1, 0) == mpq_class(3, 2));
    CHECK(m.at(1, 1) == mpq_class(-1, 2));

    auto t = exact_of(TransformKind::T_tilde, 2);
    const char *expect[3][3] = {{"1/4", "-1/4", "1/4"}, {"3/2", "-1/2", "-1/2"}, {"9/4", "3/4", "1/4"}};
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) CHECK(t.at(i, j) == parse_rational(expect[i][j]));
}

TEST_CASE("M' is the antidiagonal and M~ the alternating diagonal") {
    auto mp = exact_of(TransformKind::M_prime, 5);
    auto mt = exact_of(TransformKind::M_tilde, 5);
    for (int i = 0; i <= 5; i++) {
        for (int j = 0; j <= 5; j++) {
            CHECK(mp.at(i, j) == (i + j == 5 ? 1 : 0));
            CHECK(mt.at(i, j) == (i == j ? ((5 + i) % 2 == 0 ? 1 : -1) : 0));
        }
    }
}

TEST_CASE("recurrence-built matrices equal the defining sums") {
    for (int n = 1; n <= 12; n++) {
        for (int k = 0; k < 9; k++) {
            auto kind = static_cast<TransformKind>(k);
            CHECK_MESSAGE(exact_of(kind, n) == oracle::closed_form_matrix(kind, n), to_string(kind), " n=", n);
        }
    }
}

TEST_CASE("involutions, inverses and composition identities") {
    for (int n = 1; n <= 10; n++) {
        auto I = ExactMatrix::identity(n + 1);
        auto M = exact_of(TransformKind::M, n);
        auto Mp = exact_of(TransformKind::M_prime, n);
        auto Mt = exact_of(TransformKind::M_tilde, n);
        CHECK(M * M == I);
        CHECK(Mp * Mp == I);
        CHECK(Mt * Mt == I);
        for (auto kind : {TransformKind::T_prime, TransformKind::T_tilde, TransformKind::T_tilde_prime}) {
            CHECK(exact_of(kind, n) * exact_of(inverse_of(kind), n) == I);
        }
        auto Tp = exact_of(TransformKind::T_prime, n);
        auto Tpi = exact_of(TransformKind::T_prime_inv, n);
        auto Tt = exact_of(TransformKind::T_tilde, n);
        auto Tti = exact_of(TransformKind::T_tilde_inv, n);
        CHECK(Tt == M * Mp * Mt * Mp);
        CHECK(Mp == Tp * M * Tpi);
        CHECK(Mt == Tt * M * Tti);
        CHECK(exact_of(TransformKind::T_tilde_prime, n) == Tt * Tpi);
        for (int i = 0; i <= n; i++)
            for (int j = i + 1; j <= n; j++) {
                CHECK(Tp.at(i, j) == 0);
                CHECK(Tpi.at(i, j) == 0);
            }
    }
}

TEST_CASE("T~'^-1 entries are bounded by one") {
    auto m = build_transform(TransformKind::T_tilde_prime_inv, 40, Precision::float64);
    for (double v : m.values()) CHECK(std::abs(v) <= 1.0);
}

TEST_CASE("apply_transform on two-qubit ground truth") {
    auto tp = build_transform(TransformKind::T_prime, 2, Precision::exact);
    auto prod = apply_transform(tp, EnumeratorVector(VectorKind::sld, q({"1/4", "1/2", "1/4"})));
    CHECK(prod.kind() == VectorKind::apd);
    CHECK(prod.exact_values() == q({"1", "1", "1"}));
    auto bell = apply_transform(tp, EnumeratorVector(VectorKind::sld, q({"1/4", "0", "3/4"})));
    CHECK(bell.exact_values() == q({"1", "1/2", "1"}));

    auto tt = build_transform(TransformKind::T_tilde, 2, Precision::exact);
    auto mixed = apply_transform(tt, EnumeratorVector(VectorKind::sld, q({"1/4", "0", "0"})));
    CHECK(mixed.kind() == VectorKind::tpd);
    CHECK(mixed.exact_values() == q({"1/16", "6/16", "9/16"}));
}

TEST_CASE("apply_transform rejects mismatched kinds and sizes") {
    auto tp = build_transform(TransformKind::T_prime, 2, Precision::exact);
    CHECK_THROWS_AS(apply_transform(tp, EnumeratorVector(VectorKind::tpd, std::vector<double>{0.1, 0.2, 0.7})),
                    ContractViolation);
    CHECK_THROWS_AS(apply_transform(tp, EnumeratorVector(VectorKind::sld, std::vector<double>{0.5, 0.5})),
                    ContractViolation);
    // The dual counterpart is accepted.
    auto d = apply_transform(tp, EnumeratorVector(VectorKind::dual_sld, std::vector<double>{0.25, 0.5, 0.25}));
    CHECK(d.kind() == VectorKind::dual_apd);
    CHECK_THROWS_AS(build_transform(TransformKind::M, 0, Precision::exact), ContractViolation);
}

TEST_CASE("float round trip through T~ and its inverse") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int n = 1; n <= 20; n++) {
        std::vector<double> a(n + 1);
        double s = 0;
        for (double &x : a) s += (x = u(rng));
        for (double &x : a) x /= s;
        EnumeratorVector v(VectorKind::sld, a);
        auto t = apply_transform(*cached_transform(TransformKind::T_tilde, n, Precision::float64), v);
        auto back = apply_transform(*cached_transform(TransformKind::T_tilde_inv, n, Precision::float64), t);
        CHECK(max_abs_diff(back, v) < 1e-12);
    }
}

TEST_CASE("convert reaches every kind and keeps exactness") {
    EnumeratorVector bell(VectorKind::sld, q({"1/4", "0", "3/4"}));
    for (int k = 0; k < 6; k++) {
        auto target = static_cast<VectorKind>(k);
        auto v = convert(bell, target);
        CHECK(v.kind() == target);
        CHECK(v.is_exact());
        CHECK(convert(v, VectorKind::sld).exact_values() == bell.exact_values());
    }
    CHECK(convert(bell, VectorKind::dual_sld).exact_values() == bell.exact_values());
}

TEST_CASE("float mode refuses n beyond the limit") {
    CHECK_THROWS_AS(build_transform(TransformKind::M, 1030, Precision::float64), PrecisionError);
    TransformOptions opts;
    opts.float_limit = 2000;
    CHECK_THROWS_AS(build_transform(TransformKind::T_prime, 1100, Precision::float64, opts), PrecisionError);
}

TEST_CASE("operator norms") {
    for (int n : {1, 4, 9}) {
        CHECK(operator_norm(build_transform(TransformKind::M_prime, n, Precision::float64)) == 1.0);
        CHECK(operator_norm(build_transform(TransformKind::M_tilde, n, Precision::float64)) == 1.0);
    }
    // Norm of M at n = 1: singular values of [[1/2,1/2],[3/2,-1/2]].
    auto m = build_transform(TransformKind::M, 1, Precision::float64);
    Eigen::Matrix2d a;
    a << 0.5, 0.5, 1.5, -0.5;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(a);
    CHECK(operator_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-9));
    auto t = build_transform(TransformKind::T_tilde_prime_inv, 100, Precision::float64);
    Eigen::MatrixXd dense(101, 101);
    for (int i = 0; i <= 100; i++)
        for (int j = 0; j <= 100; j++) dense(i, j) = t(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> ref(dense);
    CHECK(operator_norm(t) == doctest::Approx(ref.singularValues()(0)).epsilon(1e-9));
}

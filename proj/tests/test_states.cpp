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

#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qwe/errors.hpp"
#include "qwe/states.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;

namespace {

std::vector<uint64_t> u(std::initializer_list<uint64_t> xs) {
    return std::vector<uint64_t>(xs);
}

void check_close(const EnumeratorVector &v, const std::vector<double> &want, double tol) {
    REQUIRE(v.size() == want.size());
    for (size_t i = 0; i < want.size(); i++) {
        CHECK(std::abs(v[i] - want[i]) <= tol);
    }
}

DenseState bell_phi_plus() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v[0] = v[3] = 1.0;
    return DenseState::from_vector(2, v);
}

DenseState zero_state(int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    v[0] = 1.0;
    return DenseState::from_vector(n, v);
}

EnumeratorVector apply_float(TransformKind kind, const EnumeratorVector &v) {
    return apply_transform(build_transform(kind, v.n(), Precision::float64), v);
}

}  // namespace

TEST_CASE("dense enumerators of two-qubit examples") {
    check_close(sld_from_dense(zero_state(2)), {0.25, 0.5, 0.25}, 1e-14);
    check_close(sld_from_dense(bell_phi_plus()), {0.25, 0.0, 0.75}, 1e-14);
    check_close(sld_from_dense(DenseState::maximally_mixed(1)), {0.5, 0.0}, 1e-14);
    check_close(apd_from_dense(bell_phi_plus()), {1.0, 0.5, 1.0}, 1e-14);
    check_close(apd_from_dense(zero_state(2)), {1.0, 1.0, 1.0}, 1e-14);
    check_close(apd_from_dense(DenseState::maximally_mixed(2)), {1.0, 0.5, 0.25}, 1e-14);
    check_close(tpd_from_dense(bell_phi_plus()), {0.25, 0.0, 0.75}, 1e-14);
    check_close(tpd_from_dense(zero_state(3)), {0, 0, 0, 1}, 1e-14);
    check_close(tpd_from_dense(DenseState::maximally_mixed(2)), {1.0 / 16, 6.0 / 16, 9.0 / 16}, 1e-14);
}

TEST_CASE("dense validation") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(DenseState(1, m), ContractViolation);
    m(0, 0) = 1.5;
    m(1, 1) = -0.5;
    CHECK_THROWS_AS(DenseState(1, m), ContractViolation);
    m = Eigen::MatrixXcd::Zero(2, 2);
    m(0, 0) = m(1, 1) = 0.5;
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DenseState(1, m), ContractViolation);
    CHECK_THROWS_AS(DenseState::maximally_mixed(13), ResourceLimit);
}

TEST_CASE("dense routines match textbook definitions on random states") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; trial++) {
        int n = 1 + trial % 4;
        int rank = 1 + trial % 3;
        DenseState s(n, oracle::random_density(n, rank, rng));
        auto sld = sld_from_dense(s);
        auto apd = apd_from_dense(s);
        auto tpd = tpd_from_dense(s);
        check_close(sld, oracle::sld_brute(s.matrix(), n), 1e-12);
        check_close(apd, oracle::apd_brute(s.matrix(), n), 1e-12);
        if (n <= 3) {
            check_close(tpd, oracle::tpd_bell_projection(s.matrix(), n), 1e-12);
        }
        check_close(apply_float(TransformKind::T_tilde, sld), tpd.values(), 1e-10);
        check_close(apply_float(TransformKind::T_prime, sld), apd.values(), 1e-10);

        double p1 = sld.sum();
        double alt = 0;
        for (int j = 0; j <= n; j++) alt += (j % 2 ? -1.0 : 1.0) * tpd[n - j];
        CHECK(std::abs(p1 - apd[n]) < 1e-10);
        CHECK(std::abs(p1 - alt) < 1e-10);
        CHECK(std::abs(p1 - s.purity()) < 1e-10);
        CHECK(std::abs(tpd.sum() - 1.0) < 1e-10);
        for (size_t i = 0; i < tpd.size(); i++) CHECK(tpd[i] > -1e-12);
    }
}

TEST_CASE("pure states: M fixes the SLD and the APD is palindromic") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 5; n++) {
        DenseState s(n, oracle::random_density(n, 1, rng));
        auto sld = sld_from_dense(s);
        auto msld = apply_float(TransformKind::M, sld);
        for (int i = 0; i <= n; i++) CHECK(std::abs(msld[i] - sld[i]) < 1e-10);
        auto apd = apd_from_dense(s);
        for (int i = 0; i <= n; i++) CHECK(std::abs(apd[i] - apd[n - i]) < 1e-10);
    }
}

TEST_CASE("spin flip") {
    Eigen::MatrixXcd rho(2, 2);
    double rx = 0.3, ry = -0.2, rz = 0.5;
    rho << 0.5 * (1 + rz), 0.5 * std::complex<double>(rx, -ry), 0.5 * std::complex<double>(rx, ry), 0.5 * (1 - rz);
    auto f = spin_flip(DenseState(1, rho)).matrix();
    CHECK(std::abs(f(0, 0).real() - 0.5 * (1 - rz)) < 1e-15);
    CHECK(std::abs(f(0, 1) - 0.5 * std::complex<double>(-rx, ry)) < 1e-15);
    auto mm = spin_flip(DenseState::maximally_mixed(3)).matrix();
    CHECK((mm - DenseState::maximally_mixed(3).matrix()).norm() < 1e-15);
    auto dicke = std::get<DenseState>(build_family_state(StateFamily::make(FamilyTag::dicke, 2, 1)));
    CHECK((spin_flip(dicke).matrix() - dicke.matrix()).norm() < 1e-14);
}

TEST_CASE("Steane code enumerators") {
    auto g = StabilizerGroup::steane();
    CHECK(g.n() == 7);
    CHECK(g.k() == 1);
    auto ce = code_enumerators(g);
    CHECK(ce.A == u({1, 0, 0, 0, 21, 0, 42, 0}));
    CHECK(ce.B == u({1, 0, 0, 21, 21, 126, 42, 45}));
    CHECK(ce.A_shadow == ce.B);
    CHECK(ce.sld()[4] == doctest::Approx(21.0 / 128));
    CHECK(ce.tpd().exact_sum() == 1);
    CHECK(ce.dual_sld().exact_sum() == 1);

    std::ifstream in(std::string(QWE_DATA_DIR) + "/steane.stab");
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    auto parsed = StabilizerGroup::parse(ss.str());
    CHECK(code_enumerators(parsed).B == ce.B);
}

TEST_CASE("two-qubit repetition check and shadow element") {
    StabilizerGroup g(2, {PauliString::parse("ZZ")});
    auto ce = code_enumerators(g);
    CHECK(ce.A == u({1, 0, 1}));
    CHECK(ce.B == u({1, 2, 5}));
    uint64_t total = 0;
    for (auto c : ce.A_shadow) total += c;
    CHECK(total == 8);
    // Odd-weight generator: the shadow is a proper coset.
    StabilizerGroup odd(1, {PauliString::parse("Z")});
    auto ce1 = code_enumerators(odd);
    CHECK(ce1.A_shadow == u({0, 2}));
    auto p = odd.shadow_element();
    CHECK(p.symplectic(odd.generators()[0]) == 1);
}

TEST_CASE("stabilizer group validation") {
    CHECK_THROWS_AS(StabilizerGroup(2, {PauliString::parse("XI"), PauliString::parse("ZI")}), ContractViolation);
    CHECK_THROWS_AS(StabilizerGroup(2, {PauliString::parse("ZZ"), PauliString::parse("ZZ")}), ContractViolation);
    CHECK_THROWS_AS(StabilizerGroup::parse("ZZ\nZZZ\n"), ContractViolation);
    CHECK_THROWS_AS(StabilizerGroup::parse("ZQ\n"), ContractViolation);
    StabilizerGroup big(30, {});
    EnumerationLimits lim;
    lim.max_normalizer_log2 = 20;
    CHECK_THROWS_AS(code_enumerators(big, lim), ResourceLimit);
}

TEST_CASE("code enumerators agree with dense projector") {
    auto g = StabilizerGroup::steane();
    auto rho = dense_from_group(g);
    auto sld = sld_from_dense(rho);
    auto ce = code_enumerators(g);
    for (int i = 0; i <= 7; i++) {
        CHECK(std::abs(sld[i] - static_cast<double>(ce.A[i]) / 128.0) < 1e-12);
    }
    auto tpd = tpd_from_dense(rho);
    for (int i = 0; i <= 7; i++) {
        CHECK(std::abs(tpd[i] - static_cast<double>(ce.A_shadow[i]) / 256.0) < 1e-12);
    }
}

TEST_CASE("family formulas") {
    auto ghz6 = family_enumerators(StateFamily::make(FamilyTag::ghz, 6));
    std::vector<mpq_class> want = {mpq_class(1, 64), 0, mpq_class(15, 64), 0, mpq_class(15, 64), 0, mpq_class(33, 64)};
    CHECK(ghz6.exact_values() == want);

    auto d21 = family_enumerators(StateFamily::make(FamilyTag::dicke, 2, 1));
    CHECK(d21.kind() == VectorKind::apd);
    check_close(d21, {1.0, 0.5, 1.0}, 0);

    auto ame = family_enumerators(StateFamily::make(FamilyTag::ame6, 6));
    CHECK(ame[1] == 0);
    CHECK(ame[2] == 0);
    CHECK(ame[3] == 0);
    CHECK(ame.exact_sum() == 1);

    auto tda = family_enumerators(StateFamily::make(FamilyTag::two_design_average, 3));
    CHECK(tda.exact_values()[0] == mpq_class(1, 8));
    CHECK(tda.exact_values()[1] == mpq_class(1, 8));

    auto mm = family_enumerators(StateFamily::make(FamilyTag::maximally_mixed, 2));
    CHECK(mm.kind() == VectorKind::tpd);
    CHECK(mm.exact_values()[2] == mpq_class(9, 16));

    auto prod = family_enumerators(StateFamily::make(FamilyTag::product_zero, 1));
    auto two = sld_tensor(prod, prod);
    CHECK(two.exact_values() == std::vector<mpq_class>{mpq_class(1, 4), mpq_class(1, 2), mpq_class(1, 4)});
}

TEST_CASE("Dicke formula matches dense projector") {
    for (int n = 1; n <= 8; n++) {
        for (int e = 0; e <= n / 2; e++) {
            auto f = StateFamily::make(FamilyTag::dicke, n, e);
            auto dense = std::get<DenseState>(build_family_state(f));
            check_close(family_enumerators(f), apd_from_dense(dense).values(), 1e-12);
        }
    }
}

TEST_CASE("superposition versus mixture") {
    for (int n = 2; n <= 8; n += 2) {
        for (auto p : {mpq_class(1, 10), mpq_class(1, 3), mpq_class(1, 2)}) {
            auto sup = family_enumerators(StateFamily::make(FamilyTag::superposition, n, -1, p));
            auto mix = family_enumerators(StateFamily::make(FamilyTag::mixture, n, -1, p));
            CHECK(sup.kind() == VectorKind::sld);
            mpq_class diff = sup.exact_values()[n] - mix.exact_values()[n];
            CHECK(diff == 2 * p * (1 - p));
            CHECK(mix.exact_values()[n] == mpq_class(1, 1 << n));
            for (int i = 0; i < n; i++) CHECK(sup.exact_values()[i] == mix.exact_values()[i]);
            auto dsup = std::get<DenseState>(build_family_state(StateFamily::make(FamilyTag::superposition, n, -1, p)));
            check_close(sup, sld_from_dense(dsup).values(), 1e-12);
            auto dmix = std::get<DenseState>(build_family_state(StateFamily::make(FamilyTag::mixture, n, -1, p)));
            check_close(mix, sld_from_dense(dmix).values(), 1e-12);
        }
    }
}

TEST_CASE("stabilizer families match dense simulation") {
    const std::vector<StateFamily> fams = {
        StateFamily::make(FamilyTag::product_zero, 3),  StateFamily::make(FamilyTag::bell_pairs, 6),
        StateFamily::make(FamilyTag::ghz, 5, 3),        StateFamily::make(FamilyTag::line_graph, 5),
        StateFamily::make(FamilyTag::cycle_graph, 6, 5), StateFamily::make(FamilyTag::cycle_graph, 4, 4),
        StateFamily::make(FamilyTag::ame6, 6),
    };
    for (const auto &f : fams) {
        CAPTURE(f.descriptor());
        auto dense = dense_from_circuit(family_circuit(f));
        check_close(family_enumerators(f), sld_from_dense(dense).values(), 1e-12);
        auto g = std::get<StabilizerGroup>(build_family_state(f));
        check_close(family_enumerators(f), sld_from_dense(dense_from_group(g)).values(), 1e-12);
    }
    auto ghz3 = std::get<StabilizerGroup>(build_family_state(StateFamily::make(FamilyTag::ghz, 3)));
    CHECK(code_enumerators(ghz3).A == u({1, 0, 3, 4}));
    auto prod = std::get<StabilizerGroup>(build_family_state(StateFamily::make(FamilyTag::product_zero, 3)));
    CHECK(prod.generators()[1].str() == "IZI");
}

TEST_CASE("three Bell pairs by convolution") {
    auto pair = family_enumerators(StateFamily::make(FamilyTag::bell_pairs, 2));
    auto six = sld_tensor(sld_tensor(pair, pair), pair);
    auto dense = dense_from_circuit(family_circuit(StateFamily::make(FamilyTag::bell_pairs, 6)));
    check_close(six, sld_from_dense(dense).values(), 1e-12);
    CHECK(six.exact_values()[6] == mpq_class(27, 64));
    CHECK(family_enumerators(StateFamily::make(FamilyTag::bell_pairs, 40)).exact_sum() == 1);
}

TEST_CASE("AME-6 circuit") {
    auto c = ame6_circuit();
    CHECK(c.two_qubit_count() == 7);
    auto tpd = tpd_from_dense(dense_from_circuit(c));
    CHECK(std::abs(1.0 - tpd[6] - 0.71875) < 1e-12);
}

TEST_CASE("family parsing and validation") {
    CHECK(StateFamily::parse("dicke-half", 8).e == 4);
    CHECK(StateFamily::parse("W", 5).e == 1);
    CHECK(StateFamily::parse("GHZ", 4).tag == FamilyTag::ghz);
    CHECK_THROWS_AS(StateFamily::parse("nope", 4), ContractViolation);
    CHECK_THROWS_AS(StateFamily::make(FamilyTag::bell_pairs, 3), ContractViolation);
    CHECK_THROWS_AS(StateFamily::make(FamilyTag::ghz, 3, 4), ContractViolation);
    CHECK_THROWS_AS(StateFamily::make(FamilyTag::mixture, 3, -1, mpq_class(3, 2)), ContractViolation);
    CHECK_THROWS_AS(build_family_state(StateFamily::make(FamilyTag::two_design_average, 3)), ContractViolation);
    CHECK(family_sld(StateFamily::make(FamilyTag::maximally_mixed, 3)).exact_values()[0] == mpq_class(1, 8));
}

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
#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/noise.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;

namespace {

EnumeratorVector ghz_sld(int n) {
    return family_sld(StateFamily::make(FamilyTag::ghz, n));
}

// Dense margin of each criterion on E_p^n[rho].
double dense_margin(const DenseState &rho, Criterion c, double p) {
    DenseState s = depolarize_dense(rho, p);
    const int n = s.n();
    switch (c) {
        case Criterion::n_body:
            return sld_from_dense(s)[n] - std::ldexp(1.0, -n);
        case Criterion::purity: {
            auto apd = apd_from_dense(s);
            return apd[n] - apd[n - 1];
        }
        case Criterion::concurrence: {
            double two = std::ldexp(1.0, -n);
            return two + (1 - two) * s.purity() - tpd_from_dense(s)[n];
        }
        case Criterion::fidelity:
            return (rho.matrix() * s.matrix()).trace().real() - 0.5;
    }
    return 0;
}

// Largest certifying p on a uniform grid, refined by bisection between grid points.
double dense_threshold(const DenseState &rho, Criterion c) {
    if (dense_margin(rho, c, 0) <= 0) return 0;
    const int g = 200;
    int last = 0;
    for (int k = 1; k <= g; k++) {
        if (dense_margin(rho, c, double(k) / g) > 0) last = k;
    }
    if (last == g) return 1;
    double lo = double(last) / g, hi = double(last + 1) / g;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        (dense_margin(rho, c, mid) > 0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("depolarize_sld") {
    auto a = ghz_sld(6);
    auto same = depolarize_sld(a, mpq_class(0));
    CHECK(same.exact_values() == a.exact_values());
    auto gone = depolarize_sld(a, mpq_class(1));
    CHECK(gone.exact_values()[0] == a.exact_values()[0]);
    for (int i = 1; i <= 6; i++) CHECK(gone.exact_values()[i] == 0);
    auto d = depolarize_sld(a, 0.1);
    CHECK(d[6] == doctest::Approx(a[6] * std::pow(0.9, 12)).epsilon(1e-14));
    CHECK(std::pow(0.9, 12) == doctest::Approx(0.2824).epsilon(1e-4));
    CHECK_THROWS_AS(depolarize_sld(a, 1.5), ContractViolation);
    CHECK_THROWS_AS(depolarize_sld(a.with_kind(VectorKind::apd), 0.1), ContractViolation);
}

TEST_CASE("channel composition") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u;
    for (int trial = 0; trial < 20; trial++) {
        auto a = sld_from_dense(DenseState(3, oracle::random_density(3, 2, rng)));
        double p = u(rng), q = u(rng);
        auto twice = depolarize_sld(depolarize_sld(a, p), q);
        auto once = depolarize_sld(a, 1 - (1 - p) * (1 - q));
        CHECK(max_abs_diff(twice, once) < 1e-12);
    }
}

TEST_CASE("purity and overlap decay") {
    auto prod = family_sld(StateFamily::make(FamilyTag::product_zero, 2));
    CHECK(purity_after_noise(prod, 0) == doctest::Approx(1.0));
    CHECK(overlap_after_noise(prod, 0) == doctest::Approx(1.0));
    CHECK(overlap_after_noise(prod, 0.5) == doctest::Approx(0.5625).epsilon(1e-15));

    std::mt19937_64 rng(5);
    for (int n = 1; n <= 4; n++) {
        DenseState rho(n, oracle::random_density(n, 1 + n % 3, rng));
        auto a = sld_from_dense(rho);
        for (double p : {0.1, 0.3, 0.7}) {
            DenseState s = depolarize_dense(rho, p);
            double overlap = (rho.matrix() * s.matrix()).trace().real();
            CHECK(std::abs(overlap_after_noise(a, p) - overlap) < 1e-10);
            CHECK(std::abs(purity_after_noise(a, p) - s.purity()) < 1e-10);
        }
    }
}

TEST_CASE("noisy family enumerators") {
    auto dicke = StateFamily::make(FamilyTag::dicke, 6, 3);
    auto clean = noisy_family_enumerators(dicke, 0);
    auto apd = family_enumerators(dicke);
    CHECK(clean.apd.exact_values() == apd.exact_values());

    for (auto f : {StateFamily::make(FamilyTag::ghz, 5), StateFamily::make(FamilyTag::dicke, 5, 2),
                   StateFamily::make(FamilyTag::ame6, 6)}) {
        auto full = noisy_family_enumerators(f, 1);
        auto mm = family_enumerators(StateFamily::make(FamilyTag::maximally_mixed, f.n));
        CHECK(full.tpd.exact_values() == mm.exact_values());
    }

    auto g = noisy_family_enumerators(StateFamily::make(FamilyTag::ghz, 6), mpq_class(1, 50));
    auto tm = [](TransformKind k, const EnumeratorVector &v) {
        return apply_transform(build_transform(k, v.n(), Precision::float64), v.to_float());
    };
    CHECK(max_abs_diff(tm(TransformKind::T_tilde_prime, g.apd), g.tpd) < 1e-10);
    CHECK(max_abs_diff(tm(TransformKind::T_tilde_inv, g.tpd), g.sld) < 1e-10);
    CHECK(max_abs_diff(tm(TransformKind::T_prime_inv, g.apd), g.sld) < 1e-10);

    // Dense cross-check of the decay formulas.
    auto w = StateFamily::make(FamilyTag::dicke, 4, 1);
    auto dense = depolarize_dense(std::get<DenseState>(build_family_state(w)), 0.15);
    auto an = noisy_family_enumerators(w, mpq_class(15, 100));
    CHECK(max_abs_diff(an.sld, sld_from_dense(dense)) < 1e-12);
    CHECK(max_abs_diff(an.apd, apd_from_dense(dense)) < 1e-12);
    CHECK(max_abs_diff(an.tpd, tpd_from_dense(dense)) < 1e-12);
}

TEST_CASE("criterion margins agree with transform-based evaluation") {
    std::mt19937_64 rng(9);
    for (int n = 2; n <= 4; n++) {
        DenseState rho(n, oracle::random_density(n, 1, rng));
        auto a = sld_from_dense(rho);
        for (double p : {0.0, 0.05, 0.2}) {
            for (auto c : {Criterion::n_body, Criterion::purity, Criterion::concurrence, Criterion::fidelity}) {
                CAPTURE(to_string(c));
                double got = to_double(criterion_margin_at(a, c, mpq_class(p)));
                CHECK(std::abs(got - dense_margin(rho, c, p)) < 1e-10);
            }
        }
    }
}

TEST_CASE("thresholds") {
    auto prod = StateFamily::make(FamilyTag::product_zero, 5);
    for (auto c : {Criterion::n_body, Criterion::purity, Criterion::concurrence, Criterion::fidelity}) {
        auto r = noise_threshold(prod, c);
        CHECK(r.threshold == 0);
        CHECK(r.never_fires);
    }
    for (int n : {52, 60}) {
        auto r = noise_threshold(StateFamily::make(FamilyTag::dicke, n, n / 2), Criterion::n_body);
        CHECK(r.threshold >= 0.28 - 0.005);
        CHECK_FALSE(r.non_monotone);
    }
    CHECK_THROWS_AS(noise_threshold(StateFamily::make(FamilyTag::dicke, 4, 1), Criterion::fidelity),
                    ContractViolation);
    auto ghz = noise_threshold(StateFamily::make(FamilyTag::ghz, 4), Criterion::fidelity);
    CHECK(ghz.threshold > 0.05);
    CHECK(std::abs(overlap_after_noise(ghz_sld(4), ghz.threshold) - 0.5) < 1e-4);
    CHECK(noise_threshold(StateFamily::make(FamilyTag::ghz, 4, 3), Criterion::fidelity).never_fires);
    CHECK(parse_criterion("n-body") == Criterion::n_body);
    CHECK_THROWS_AS(parse_criterion("ppt"), ContractViolation);
}

TEST_CASE("thresholds match dense scan at n = 4") {
    for (auto f : {StateFamily::make(FamilyTag::dicke, 4, 1), StateFamily::make(FamilyTag::dicke, 4, 2),
                   StateFamily::make(FamilyTag::ghz, 4)}) {
        auto rho = f.is_stabilizer() ? dense_from_circuit(family_circuit(f))
                                     : std::get<DenseState>(build_family_state(f));
        for (auto c : {Criterion::n_body, Criterion::purity, Criterion::concurrence}) {
            CAPTURE(f.descriptor());
            CAPTURE(to_string(c));
            CHECK(std::abs(noise_threshold(f, c).threshold - dense_threshold(rho, c)) < 1e-3);
        }
    }
    // Purity beats concurrence for Dicke states.
    for (int n : {4, 8, 12, 20}) {
        for (int e : {1, n / 2}) {
            auto f = StateFamily::make(FamilyTag::dicke, n, e);
            CHECK(noise_threshold(f, Criterion::purity).threshold >= noise_threshold(f, Criterion::concurrence).threshold);
        }
    }
}

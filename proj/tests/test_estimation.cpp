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

#include <chrono>
#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/estimation.hpp"
#include "qwe/noise.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;

namespace {

constexpr VectorKind kAllKinds[] = {VectorKind::sld,      VectorKind::dual_sld, VectorKind::apd,
                                    VectorKind::dual_apd, VectorKind::tpd,      VectorKind::dual_tpd};

EnumeratorVector random_exact_tpd(int n, std::mt19937_64 &rng) {
    std::vector<mpq_class> w(n + 1);
    mpz_class total = 0;
    std::vector<long> raw(n + 1);
    for (int j = 0; j <= n; j++) {
        raw[j] = static_cast<long>(rng() % 1000);
        total += raw[j];
    }
    total += 1;
    raw[n] += 1;
    for (int j = 0; j <= n; j++) {
        w[j] = mpq_class(raw[j], total);
        w[j].canonicalize();
    }
    return EnumeratorVector(VectorKind::tpd, std::move(w));
}

BellSampleSet histogram_samples(int n, std::vector<uint64_t> hist) {
    BellSampleSet s;
    s.n = n;
    s.encoding = BellSampleSet::Encoding::histogram;
    s.histogram = std::move(hist);
    for (auto c : s.histogram) s.shots += c;
    return s;
}

}  // namespace

TEST_CASE("table entries at n = 1") {
    EstimatorTable t(1);
    CHECK(t.exact(VectorKind::sld, 1, 1) == mpq_class(-3, 2));
    CHECK(t.exact(VectorKind::sld, 1, 0) == mpq_class(1, 2));
    CHECK(t.exact(VectorKind::apd, 1, 1) == -1);
    CHECK(t.exact(VectorKind::apd, 1, 0) == 1);
    CHECK(t(VectorKind::sld, 1, 1) == -1.5);
}

TEST_CASE("sld row zero is constant and apd entries are bounded") {
    for (int n : {1, 3, 8, 20}) {
        EstimatorTable t(n);
        for (int s = 0; s <= n; s++) {
            CHECK(t.exact(VectorKind::sld, 0, s) == mpq_class(1, pow2(n)));
            for (int i = 0; i <= n; i++) {
                CHECK(std::abs(t(VectorKind::apd, i, s)) <= 1.0);
                CHECK(t(VectorKind::tpd, i, s) == (s == n - i ? 1.0 : 0.0));
            }
        }
    }
}

TEST_CASE("table expectations equal the transforms of the TPD") {
    std::mt19937_64 rng(17);
    for (int n : {1, 2, 6, 12}) {
        EstimatorTable t(n);
        for (int rep = 0; rep < 3; rep++) {
            auto tpd = random_exact_tpd(n, rng);
            for (auto kind : kAllKinds) {
                auto via_table = table_expectation(t, kind, tpd);
                auto via_transform = convert(tpd, kind);
                CAPTURE(n);
                CAPTURE(to_string(kind));
                CHECK(via_table.exact_values() == via_transform.exact_values());
                auto f = table_expectation(t, kind, tpd.to_float());
                CHECK(max_abs_diff(f, via_transform.to_float()) < 1e-10);
            }
        }
    }
}

TEST_CASE("table expectations on dense states") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 4; n++) {
        EstimatorTable t(n);
        DenseState rho(n, oracle::random_density(n, 1 + static_cast<int>(rng() % 3), rng));
        auto tpd = tpd_from_dense(rho);
        CHECK(max_abs_diff(table_expectation(t, VectorKind::sld, tpd), sld_from_dense(rho)) < 1e-10);
        CHECK(max_abs_diff(table_expectation(t, VectorKind::apd, tpd), apd_from_dense(rho)) < 1e-10);
    }
}

TEST_CASE("all-triplet shots give the product-state SLD") {
    const int n = 5;
    EstimatorTable t(n);
    std::vector<uint64_t> h(n + 1, 0);
    h[n] = 1234;
    auto rep = estimate_enumerators(histogram_samples(n, h), t, {200, 0.95, 1});
    for (int i = 0; i <= n; i++) {
        CHECK(rep[VectorKind::sld].value[i] == doctest::Approx(to_double(binomial(n, i)) / 32.0).epsilon(1e-14));
        CHECK(rep[VectorKind::sld].lower[i] == doctest::Approx(rep[VectorKind::sld].value[i]));
        CHECK(rep[VectorKind::sld].std_error[i] == 0.0);
    }
    CHECK(rep.purity == 1.0);
    CHECK(rep.mean_triplets == n);
}

TEST_CASE("point estimates are exact histogram averages") {
    const int n = 4;
    EstimatorTable t(n);
    auto tpd = convert(family_sld(StateFamily::make(FamilyTag::ghz, n)), VectorKind::tpd);
    auto samples = sample_tpd(tpd, 20000, 11);
    auto rep = estimate_enumerators(samples, t, {0, 0.95, 0});
    auto hist = samples.triplet_histogram();
    std::vector<mpq_class> emp(n + 1);
    for (int j = 0; j <= n; j++) {
        emp[j] = mpq_class(static_cast<unsigned long>(hist[j]), static_cast<unsigned long>(samples.shots));
        emp[j].canonicalize();
    }
    EnumeratorVector empirical(VectorKind::tpd, emp);
    for (auto kind : kAllKinds) {
        auto expect = table_expectation(t, kind, empirical).to_float();
        for (int i = 0; i <= n; i++) CHECK(rep[kind].value[i] == expect[i]);
    }
}

TEST_CASE("bootstrap intervals cover the truth and are reproducible") {
    const int n = 6;
    EstimatorTable t(n);
    auto sld = family_sld(StateFamily::make(FamilyTag::ghz, n));
    auto tpd = convert(sld, VectorKind::tpd);
    int covered = 0, total = 0;
    for (uint64_t seed = 0; seed < 10; seed++) {
        auto rep = estimate_enumerators(sample_tpd(tpd, 20000, seed), t, {300, 0.95, seed});
        for (int i = 0; i <= n; i++) {
            total++;
            covered += rep[VectorKind::sld].lower[i] - 1e-12 <= sld[i] && sld[i] <= rep[VectorKind::sld].upper[i] + 1e-12;
        }
    }
    CHECK(covered >= 0.85 * total);
    auto s = sample_tpd(tpd, 5000, 3);
    auto a = estimate_enumerators(s, t, {100, 0.9, 8});
    auto b = estimate_enumerators(s, t, {100, 0.9, 8});
    CHECK(a[VectorKind::apd].lower == b[VectorKind::apd].lower);
    CHECK(a.purity_upper == b.purity_upper);
}

TEST_CASE("Steane estimates bracket A and B") {
    auto ce = code_enumerators(StabilizerGroup::steane());
    EstimatorTable t(7);
    auto rep = estimate_enumerators(simulate_steane(NoiseModel{}, 40000, 21), t, {400, 0.95, 21});
    int inside = 0;
    for (int i = 0; i <= 7; i++) {
        double a = ce.sld()[i], b = ce.dual_sld()[i];
        inside += rep[VectorKind::sld].lower[i] - 1e-12 <= a && a <= rep[VectorKind::sld].upper[i] + 1e-12;
        inside += rep[VectorKind::dual_sld].lower[i] - 1e-12 <= b && b <= rep[VectorKind::dual_sld].upper[i] + 1e-12;
    }
    CHECK(inside >= 14);
}

TEST_CASE("estimation contracts") {
    EstimatorTable t(3);
    CHECK_THROWS_AS(estimate_enumerators(histogram_samples(3, {0, 0, 0, 0}), t), ContractViolation);
    CHECK_THROWS_AS(estimate_enumerators(histogram_samples(2, {1, 0, 0}), t), ContractViolation);
    CHECK_THROWS_AS(EstimatorTable(0), ContractViolation);
}

TEST_CASE("variance formula") {
    // Product state: every shot gives the same row values.
    std::vector<mpq_class> delta(9, mpq_class(0));
    delta[8] = 1;
    auto v = sld_variance(EnumeratorVector(VectorKind::tpd, delta), 100);
    CHECK(v.total == 0.0);

    // Float path agrees with the exact path; both scale as 1/N.
    auto tpd = convert(family_sld(StateFamily::make(FamilyTag::ghz, 6)), VectorKind::tpd);
    auto exact = sld_variance(tpd, 1000);
    auto flt = sld_variance(tpd.to_float(), 1000);
    CHECK(exact.total > 0);
    CHECK(flt.total == doctest::Approx(exact.total).epsilon(1e-12));
    CHECK(sld_variance(tpd, 1).total == doctest::Approx(1000 * exact.total).epsilon(1e-12));

    // Direct second-moment oracle from the estimator table.
    EstimatorTable t(6);
    double direct = 0;
    for (int i = 0; i <= 6; i++) {
        double m1 = 0, m2 = 0;
        for (int j = 0; j <= 6; j++) {
            double x = t(VectorKind::sld, i, 6 - j);
            m1 += x * tpd[j];
            m2 += x * x * tpd[j];
        }
        direct += (m2 - m1 * m1) / 1000;
    }
    CHECK(exact.total == doctest::Approx(direct).epsilon(1e-10));
    CHECK_THROWS_AS(sld_variance(tpd, 0), ContractViolation);
}

TEST_CASE("empirical variance matches the prediction") {
    const int n = 6;
    EstimatorTable t(n);
    auto tpd = convert(family_sld(StateFamily::make(FamilyTag::ghz, n)), VectorKind::tpd);
    const uint64_t shots = 20000;
    const int runs = 40;
    std::vector<std::vector<double>> est;
    for (int r = 0; r < runs; r++) {
        est.push_back(estimate_enumerators(sample_tpd(tpd, shots, 100 + r), t, {0, 0.95, 0})[VectorKind::sld].value);
    }
    double total = 0;
    for (int i = 0; i <= n; i++) {
        double m = 0, m2 = 0;
        for (auto &e : est) {
            m += e[i];
            m2 += e[i] * e[i];
        }
        m /= runs;
        total += (m2 - runs * m * m) / (runs - 1);
    }
    double predicted = sld_variance(tpd, shots).total;
    CHECK(total == doctest::Approx(predicted).epsilon(0.35));
}

TEST_CASE("sample requirements at the planning anchors") {
    auto two = convert(family_enumerators(StateFamily::make(FamilyTag::two_design_average, 200)), VectorKind::tpd);
    double n2 = samples_required(two, 1e-4);
    CHECK(n2 >= 5e3);
    CHECK(n2 <= 2e4);
    auto ghz = convert(family_sld(StateFamily::make(FamilyTag::ghz, 50)), VectorKind::tpd);
    CHECK(samples_required(ghz, 1e-4) > 1e15);
    CHECK_THROWS_AS(samples_required(ghz, 0), ContractViolation);
}

TEST_CASE("Hoeffding sample counts") {
    CHECK(hoeffding_samples(VectorKind::tpd, 10, 0.01, 0.05) == 18445);
    CHECK(hoeffding_samples(VectorKind::apd, 10, 0.01, 0.05) == 4 * 18445);
    CHECK(hoeffding_samples(VectorKind::tpd, 10, 0.01, 0.05, true) ==
          std::ceil(std::log(2 * 11 / 0.05) / (2 * 1e-4)));
    double prev = hoeffding_samples(VectorKind::sld, 2, 1e-4, 0.05, false, 0);
    for (int n = 3; n < 12; n++) {
        double cur = hoeffding_samples(VectorKind::sld, n, 1e-4, 0.05, false, 0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(hoeffding_samples(VectorKind::tpd, 4, 0, 0.05), ContractViolation);
    CHECK_THROWS_AS(hoeffding_samples(VectorKind::dual_tpd, 4, 0.1, 0.05), ContractViolation);
}

TEST_CASE("mitigation") {
    const int n = 6;
    auto prod = family_sld(StateFamily::make(FamilyTag::product_zero, n));
    auto same = fit_mitigation(prod, prod, "product");
    for (double l : same.lambdas) CHECK(l == 1.0);
    CHECK(max_abs_diff(mitigate(prod, same), prod) == 0.0);

    auto model = fit_mitigation(depolarize_sld(prod, 0.02), prod, "product");
    const double reported[] = {1, 0.957, 0.919, 0.885, 0.852, 0.819, 0.785};
    for (int i = 0; i <= n; i++) {
        CHECK(model.lambdas[i] == doctest::Approx(std::pow(0.98, 2 * i)).epsilon(1e-12));
        CHECK(std::abs(model.lambdas[i] - reported[i]) < 0.005);
    }
    CHECK(model.flagged.empty());

    auto ghz = family_sld(StateFamily::make(FamilyTag::ghz, n));
    CHECK(max_abs_diff(mitigate(depolarize_sld(ghz, 0.02), model), ghz.to_float()) < 1e-10);

    // Zero ideal entries are flagged and left undamped.
    auto flagged = fit_mitigation(depolarize_sld(ghz, 0.02), ghz, "ghz");
    CHECK(flagged.lambdas[1] == 1.0);
    CHECK(!flagged.flagged.empty());
}

TEST_CASE("effective depolarizing fit inverts the purity decay") {
    auto ghz = family_sld(StateFamily::make(FamilyTag::ghz, 5));
    for (double p : {0.0, 0.01, 0.07, 0.3}) {
        double measured = purity_after_noise(ghz, p);
        CHECK(fit_effective_depolarizing(ghz, measured) == doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("tables at n = 1000") {
    auto start = std::chrono::steady_clock::now();
    EstimatorTable t(1000);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    MESSAGE("n = 1000 tables built in " << secs << " s");
    CHECK(secs < 10.0);
    CHECK(t(VectorKind::tpd, 3, 997) == 1.0);
    CHECK(std::abs(t(VectorKind::apd, 500, 10)) <= 1.0);
}

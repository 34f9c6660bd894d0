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

#include "qwe/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/noise.hpp"
#include "qwe/rng.hpp"
#include "qwe/transforms.hpp"

namespace qwe {

namespace {

constexpr uint64_t kBootstrapSalt = 0xB0075742A9E1C3D5ull;

size_t at(int n, int i, int j) {
    return static_cast<size_t>(i) * (n + 1) + j;
}

}  // namespace

EstimatorTable::EstimatorTable(int n) : n_(n) {
    if (n < 1) {
        fail_contract("estimator tables need n >= 1");
    }
    sld_num_ = macwilliams_lattice(n);
    apd_num_ = unitary_shadow_lattice(n);
    binom_ = binomial_row(n);
    const size_t d = static_cast<size_t>(n) + 1;
    for (auto &f : floats_) f.assign(d * d, 0.0);

    auto &sld = floats_[static_cast<int>(VectorKind::sld)];
    auto &dsld = floats_[static_cast<int>(VectorKind::dual_sld)];
    auto &apd = floats_[static_cast<int>(VectorKind::apd)];
    auto &dapd = floats_[static_cast<int>(VectorKind::dual_apd)];
    auto &tpd = floats_[static_cast<int>(VectorKind::tpd)];
    auto &dtpd = floats_[static_cast<int>(VectorKind::dual_tpd)];
    for (int i = 0; i <= n; i++) {
        for (int s = 0; s <= n; s++) {
            double v = to_double_shifted(sld_num_[at(n, i, n - s)], static_cast<unsigned long>(n));
            sld[at(n, i, s)] = (i % 2) ? -v : v;
            apd[at(n, i, s)] = to_double(apd_num_[at(n, i, n - s)], binom_[i]);
        }
    }
    for (int i = 0; i <= n; i++) {
        for (int s = 0; s <= n; s++) {
            dsld[at(n, i, s)] = (s % 2) ? -sld[at(n, i, s)] : sld[at(n, i, s)];
            dapd[at(n, i, s)] = apd[at(n, n - i, s)];
        }
        tpd[at(n, i, n - i)] = 1.0;
        dtpd[at(n, i, n - i)] = ((n - i) % 2) ? -1.0 : 1.0;
    }
}

mpz_class EstimatorTable::numerator(VectorKind kind, int i, int s) const {
    if (i < 0 || i > n_ || s < 0 || s > n_) {
        fail_contract("estimator table index out of range");
    }
    const int n = n_;
    switch (kind) {
        case VectorKind::sld:
        case VectorKind::dual_sld: {
            int sign = (i % 2) ^ (kind == VectorKind::dual_sld ? s % 2 : 0);
            const mpz_class &v = sld_num_[at(n, i, n - s)];
            return sign ? mpz_class(-v) : v;
        }
        case VectorKind::apd:
            return apd_num_[at(n, i, n - s)];
        case VectorKind::dual_apd:
            return apd_num_[at(n, n - i, n - s)];
        case VectorKind::tpd:
            return s == n - i ? 1 : 0;
        case VectorKind::dual_tpd:
            return s == n - i ? (s % 2 ? -1 : 1) : 0;
    }
    return 0;
}

mpz_class EstimatorTable::denominator(VectorKind kind, int i) const {
    switch (kind) {
        case VectorKind::sld:
        case VectorKind::dual_sld:
            return pow2(static_cast<unsigned long>(n_));
        case VectorKind::apd:
            return binom_[i];
        case VectorKind::dual_apd:
            return binom_[n_ - i];
        default:
            return 1;
    }
}

mpq_class EstimatorTable::exact(VectorKind kind, int i, int s) const {
    mpq_class v(numerator(kind, i, s), denominator(kind, i));
    v.canonicalize();
    return v;
}

EnumeratorVector table_expectation(const EstimatorTable &table, VectorKind kind, const EnumeratorVector &tpd) {
    require_kind(tpd, VectorKind::tpd, "table_expectation");
    const int n = table.n();
    if (tpd.n() != n) {
        fail_contract("table_expectation: TPD has n = " + std::to_string(tpd.n()) + ", table has n = " +
                      std::to_string(n));
    }
    if (tpd.is_exact()) {
        std::vector<mpq_class> out(n + 1, mpq_class(0));
        for (int i = 0; i <= n; i++) {
            for (int j = 0; j <= n; j++) {
                if (tpd.exact_values()[j] != 0) out[i] += table.exact(kind, i, n - j) * tpd.exact_values()[j];
            }
            out[i].canonicalize();
        }
        return EnumeratorVector(kind, std::move(out));
    }
    std::vector<double> out(n + 1, 0.0);
    for (int i = 0; i <= n; i++) {
        long double acc = 0;
        for (int j = 0; j <= n; j++) acc += static_cast<long double>(table(kind, i, n - j)) * tpd[j];
        out[i] = static_cast<double>(acc);
    }
    return EnumeratorVector(kind, std::move(out));
}

namespace {

double quantile(std::vector<double> &v, double q) {
    std::sort(v.begin(), v.end());
    double pos = q * static_cast<double>(v.size() - 1);
    size_t lo = static_cast<size_t>(std::floor(pos));
    size_t hi = std::min(lo + 1, v.size() - 1);
    double f = pos - static_cast<double>(lo);
    return v[lo] * (1 - f) + v[hi] * f;
}

}  // namespace

EstimationReport estimate_enumerators(const BellSampleSet &samples, const EstimatorTable &table,
                                      const EstimationOptions &options) {
    samples.validate();
    const int n = table.n();
    if (samples.n != n) {
        fail_contract("estimation: samples have n = " + std::to_string(samples.n) + ", table has n = " +
                      std::to_string(n));
    }
    if (samples.shots == 0) {
        fail_contract("estimation: the sample set is empty");
    }
    if (options.bootstrap_resamples < 0 || !(options.ci_level > 0 && options.ci_level < 1)) {
        fail_contract("estimation: invalid bootstrap settings");
    }
    EstimationReport rep;
    rep.n = n;
    rep.shots = samples.shots;
    rep.resamples = options.bootstrap_resamples;
    rep.ci_level = options.ci_level;
    rep.triplet_histogram = samples.triplet_histogram();

    // Non-empty bins by singlet count.
    std::vector<int> bins;
    std::vector<uint64_t> counts;
    for (int s = 0; s <= n; s++) {
        uint64_t c = rep.triplet_histogram[n - s];
        if (c) {
            bins.push_back(s);
            counts.push_back(c);
        }
    }
    const double N = static_cast<double>(samples.shots);
    const mpz_class Nz(std::to_string(samples.shots));
    std::vector<mpz_class> count_z;
    for (uint64_t c : counts) count_z.emplace_back(std::to_string(c));

    for (int k = 0; k < 6; k++) {
        const VectorKind kind = static_cast<VectorKind>(k);
        VectorEstimate &est = rep.vectors[k];
        est.kind = kind;
        est.value.assign(n + 1, 0.0);
        est.std_error.assign(n + 1, 0.0);
        for (int i = 0; i <= n; i++) {
            mpz_class sum = 0;
            long double sq = 0;
            for (size_t b = 0; b < bins.size(); b++) {
                sum += table.numerator(kind, i, bins[b]) * count_z[b];
                long double t = table(kind, i, bins[b]);
                sq += t * t * static_cast<long double>(counts[b]);
            }
            est.value[i] = to_double(sum, Nz * table.denominator(kind, i));
            long double var = sq / N - static_cast<long double>(est.value[i]) * est.value[i];
            est.std_error[i] = static_cast<double>(std::sqrt(std::max<long double>(var, 0) / N));
        }
        est.lower = est.value;
        est.upper = est.value;
    }
    double purity = 0, mean = 0;
    for (size_t b = 0; b < bins.size(); b++) {
        purity += ((bins[b] % 2) ? -1.0 : 1.0) * static_cast<double>(counts[b]);
        mean += static_cast<double>(n - bins[b]) * static_cast<double>(counts[b]);
    }
    rep.purity = rep.purity_lower = rep.purity_upper = purity / N;
    rep.mean_triplets = mean / N;

    const int R = options.bootstrap_resamples;
    if (R == 0) {
        return rep;
    }
    rep.precision_warning = n > EstimatorTable::kFloatSafeN;
    std::vector<double> boot(static_cast<size_t>(6) * (n + 1) * R);
    std::vector<double> boot_purity(R);
    std::vector<uint64_t> rc(bins.size());
    for (int r = 0; r < R; r++) {
        StreamRng rng(options.seed ^ kBootstrapSalt, static_cast<uint64_t>(r));
        uint64_t remaining = samples.shots;
        double mass_left = 1.0;
        for (size_t b = 0; b < bins.size(); b++) {
            if (b + 1 == bins.size() || remaining == 0) {
                rc[b] = remaining;
            } else {
                double prob = std::min(1.0, (static_cast<double>(counts[b]) / N) / mass_left);
                std::binomial_distribution<uint64_t> draw(remaining, prob);
                rc[b] = draw(rng);
                mass_left -= static_cast<double>(counts[b]) / N;
            }
            remaining -= rc[b];
        }
        double pur = 0;
        for (size_t b = 0; b < bins.size(); b++) pur += ((bins[b] % 2) ? -1.0 : 1.0) * static_cast<double>(rc[b]);
        boot_purity[r] = pur / N;
        for (int k = 0; k < 6; k++) {
            const VectorKind kind = static_cast<VectorKind>(k);
            for (int i = 0; i <= n; i++) {
                long double acc = 0;
                for (size_t b = 0; b < bins.size(); b++) {
                    if (rc[b]) acc += static_cast<long double>(table(kind, i, bins[b])) * rc[b];
                }
                boot[(static_cast<size_t>(k) * (n + 1) + i) * R + r] = static_cast<double>(acc / N);
            }
        }
    }
    const double alpha = (1 - options.ci_level) / 2;
    std::vector<double> tmp(R);
    for (int k = 0; k < 6; k++) {
        for (int i = 0; i <= n; i++) {
            const double *src = &boot[(static_cast<size_t>(k) * (n + 1) + i) * R];
            tmp.assign(src, src + R);
            rep.vectors[k].lower[i] = quantile(tmp, alpha);
            rep.vectors[k].upper[i] = quantile(tmp, 1 - alpha);
        }
    }
    rep.purity_lower = quantile(boot_purity, alpha);
    rep.purity_upper = quantile(boot_purity, 1 - alpha);
    return rep;
}

VarianceReport sld_variance(const EnumeratorVector &tpd, double shots) {
    require_kind(tpd, VectorKind::tpd, "sld_variance");
    require_normalized_tpd(tpd);
    if (!(shots > 0)) {
        fail_contract("sld_variance: the number of shots must be positive");
    }
    const int n = tpd.n();
    VarianceReport rep;
    rep.per_index.assign(n + 1, 0.0);
    std::vector<mpz_class> k = macwilliams_lattice(n);
    if (tpd.is_exact()) {
        // tpd_j = num_j / den over a common denominator.
        mpz_class den = 1;
        for (const auto &q : tpd.exact_values()) den = lcm(den, mpz_class(q.get_den()));
        std::vector<mpz_class> num(n + 1);
        for (int j = 0; j <= n; j++) {
            num[j] = tpd.exact_values()[j].get_num() * (den / tpd.exact_values()[j].get_den());
        }
        const mpz_class p2 = pow2(n);
        for (int i = 0; i <= n; i++) {
            mpz_class e1 = 0, e2 = 0;
            for (int j = 0; j <= n; j++) {
                if (num[j] == 0) continue;
                const mpz_class &kij = k[at(n, i, j)];
                mpz_class t = kij * num[j];
                e1 += t;
                e2 += t * kij;
            }
            // var = e2 / (4^n den) - e1^2 / (4^n den^2)
            mpq_class var(e2 * den - e1 * e1, p2 * p2 * den * den);
            var.canonicalize();
            rep.per_index[i] = to_double(var) / shots;
        }
    } else {
        for (int i = 0; i <= n; i++) {
            long double e1 = 0, e2 = 0;
            for (int j = 0; j <= n; j++) {
                long double t = to_double_shifted(k[at(n, i, j)], static_cast<unsigned long>(n));
                e1 += t * tpd[j];
                e2 += t * t * tpd[j];
            }
            rep.per_index[i] = static_cast<double>(std::max<long double>(e2 - e1 * e1, 0) / shots);
        }
    }
    rep.total = std::accumulate(rep.per_index.begin(), rep.per_index.end(), 0.0);
    return rep;
}

double samples_required(const EnumeratorVector &tpd, double target_variance) {
    if (!(target_variance > 0)) {
        fail_contract("samples_required: target variance must be positive");
    }
    return std::ceil(sld_variance(tpd, 1.0).total / target_variance);
}

double hoeffding_samples(VectorKind kind, int n, double eps, double delta, bool simultaneous, int index) {
    if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
        fail_contract("hoeffding_samples: eps and delta must lie in (0, 1)");
    }
    if (n < 1) {
        fail_contract("hoeffding_samples: n must be at least 1");
    }
    double range;
    switch (kind) {
        case VectorKind::tpd:
            range = 1.0;
            break;
        case VectorKind::apd:
            range = 2.0;
            break;
        case VectorKind::sld: {
            auto width = [n](int i) {
                return 2.0 * std::exp(i * std::log(1.5) + std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                                      std::lgamma(n - i + 1.0) - (n - i) * std::log(2.0));
            };
            if (index > n) {
                fail_contract("hoeffding_samples: index outside [0, n]");
            }
            if (index >= 0) {
                range = width(index);
            } else {
                range = 0;
                for (int i = 0; i <= n; i++) range = std::max(range, width(i));
            }
            break;
        }
        default:
            fail_contract("hoeffding_samples: supported kinds are sld, apd, tpd");
    }
    const double log_term = simultaneous ? std::log(2.0 * (n + 1) / delta) : std::log(2.0 / delta);
    // Unit-range count first, then scaled by the squared range: an integer
    // multiple of the Delta = 1 count that never falls below the bound.
    const double unit = std::ceil(log_term / (2 * eps * eps) * (1 - 1e-15));
    return std::ceil(range * range * unit * (1 - 1e-15));
}

MitigationModel fit_mitigation(const EnumeratorVector &reference_raw, const EnumeratorVector &reference_ideal,
                               std::string reference) {
    require_kind(reference_raw, VectorKind::sld, "fit_mitigation");
    require_kind(reference_ideal, VectorKind::sld, "fit_mitigation");
    if (reference_raw.n() != reference_ideal.n()) {
        fail_contract("fit_mitigation: raw and ideal references differ in n");
    }
    MitigationModel m;
    m.reference = std::move(reference);
    const int n = reference_raw.n();
    m.lambdas.assign(n + 1, 1.0);
    for (int i = 1; i <= n; i++) {
        double ideal = reference_ideal[i];
        double lam = ideal != 0 ? reference_raw[i] / ideal : 0.0;
        if (ideal == 0 || !(lam > 0) || lam > 1) {
            m.flagged.push_back(i);
            lam = 1.0;
        }
        m.lambdas[i] = lam;
    }
    return m;
}

EnumeratorVector mitigate(const EnumeratorVector &raw_sld, const MitigationModel &model) {
    require_kind(raw_sld, VectorKind::sld, "mitigate");
    if (model.lambdas.size() != raw_sld.size()) {
        fail_contract("mitigate: model has " + std::to_string(model.lambdas.size()) + " factors for n + 1 = " +
                      std::to_string(raw_sld.size()) + " entries");
    }
    std::vector<double> out(raw_sld.size());
    for (size_t i = 0; i < out.size(); i++) out[i] = raw_sld[i] / model.lambdas[i];
    return EnumeratorVector(VectorKind::sld, std::move(out));
}

double fit_effective_depolarizing(const EnumeratorVector &ideal_sld, double measured_purity) {
    require_kind(ideal_sld, VectorKind::sld, "fit_effective_depolarizing");
    if (measured_purity >= purity_after_noise(ideal_sld, 0.0)) return 0.0;
    if (measured_purity <= purity_after_noise(ideal_sld, 1.0)) return 1.0;
    double lo = 0, hi = 1;
    for (int it = 0; it < 60; it++) {
        double mid = 0.5 * (lo + hi);
        (purity_after_noise(ideal_sld, mid) > measured_purity ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qwe

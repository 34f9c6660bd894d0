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


#ifndef QWE_ESTIMATION_HPP
#define QWE_ESTIMATION_HPP

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qwe/enumerator.hpp"
#include "qwe/sampler.hpp"

namespace qwe {

/// Single-shot estimators: entry [i][s] of table `kind` is the value a shot
/// with s singlets contributes to entry i of that enumerator. The SLD and APD
/// tables are held exactly as integer numerators; all six have float views.
class EstimatorTable {
 public:
    explicit EstimatorTable(int n);

    int n() const { return n_; }
    double operator()(VectorKind kind, int i, int s) const {
        return floats_[static_cast<int>(kind)][static_cast<size_t>(i) * (n_ + 1) + s];
    }
    const std::vector<double> &table(VectorKind kind) const { return floats_[static_cast<int>(kind)]; }
    mpq_class exact(VectorKind kind, int i, int s) const;
    /// exact(kind, i, s) == numerator(kind, i, s) / denominator(kind, i).
    mpz_class numerator(VectorKind kind, int i, int s) const;
    mpz_class denominator(VectorKind kind, int i) const;

    /// Float views of the SLD table lose significance beyond this n.
    static constexpr int kFloatSafeN = 60;

 private:
    int n_;
    // sld: (-1)^i K[i][n-s] / 2^n;  apd: U[i][n-s] / C(n, i)
    std::vector<mpz_class> sld_num_;
    std::vector<mpz_class> apd_num_;
    std::vector<mpz_class> binom_;
    std::array<std::vector<double>, 6> floats_;
};

/// sum_j table[i][n - j] * tpd_j for every i: the estimator's expectation
/// under a triplet distribution. Exact if the TPD is exact.
EnumeratorVector table_expectation(const EstimatorTable &table, VectorKind kind, const EnumeratorVector &tpd);

struct EstimationOptions {
    int bootstrap_resamples = 1000;
    double ci_level = 0.95;
    uint64_t seed = 0;
};

struct VectorEstimate {
    VectorKind kind = VectorKind::sld;
    std::vector<double> value;
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<double> std_error;

    EnumeratorVector vector() const { return EnumeratorVector(kind, value); }
};

struct EstimationReport {
    int n = 0;
    uint64_t shots = 0;
    int resamples = 0;
    double ci_level = 0.95;
    std::vector<uint64_t> triplet_histogram;
    std::array<VectorEstimate, 6> vectors;
    double purity = 0.0;
    double purity_lower = 0.0;
    double purity_upper = 0.0;
    double mean_triplets = 0.0;
    /// Set when float bootstrap tables beyond kFloatSafeN were used.
    bool precision_warning = false;

    const VectorEstimate &operator[](VectorKind kind) const { return vectors[static_cast<int>(kind)]; }
};

/// Sample means of the table columns (computed exactly from the integer
/// histogram) with percentile-bootstrap intervals from multinomial resamples.
EstimationReport estimate_enumerators(const BellSampleSet &samples, const EstimatorTable &table,
                                      const EstimationOptions &options = {});

struct VarianceReport {
    std::vector<double> per_index;
    double total = 0.0;
};

/// Variance of the SLD estimate from N shots drawn from `tpd`.
VarianceReport sld_variance(const EnumeratorVector &tpd, double shots);
/// Shots needed to bring the total SLD variance down to `target`.
double samples_required(const EnumeratorVector &tpd, double target_variance);

/// ceil(D^2 / (2 eps^2) ln(2/delta)), with ln(2(n+1)/delta) when all n + 1
/// entries must hold simultaneously. D = 1 (tpd), 2 (apd), 2 * 3^i C(n,i) / 2^n (sld entry i).
double hoeffding_samples(VectorKind kind, int n, double eps, double delta, bool simultaneous = false,
                         int index = -1);

/// Damping factors lambda_i = raw_i / ideal_i from a reference state.
struct MitigationModel {
    std::vector<double> lambdas;
    std::string reference;
    /// Entries that were clamped to 1 (ideal zero, ratio above 1, or ratio not positive).
    std::vector<int> flagged;
};

MitigationModel fit_mitigation(const EnumeratorVector &reference_raw, const EnumeratorVector &reference_ideal,
                               std::string reference = "");
EnumeratorVector mitigate(const EnumeratorVector &raw_sld, const MitigationModel &model);

/// Effective local depolarizing strength p with sum_i a_i (1-p)^(2i) equal to
/// the measured purity (experimental alternative to damping factors).
double fit_effective_depolarizing(const EnumeratorVector &ideal_sld, double measured_purity);

}  // namespace qwe

#endif

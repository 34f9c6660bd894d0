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


#ifndef QWE_NOISE_HPP
#define QWE_NOISE_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qwe/enumerator.hpp"
#include "qwe/states.hpp"

namespace qwe {

/// Local depolarizing strength `p` (E_p = (1-p) rho + p 1/2 on every qubit
/// before readout) plus a per-gate depolarizing rate used by the sampler.
struct NoiseModel {
    double p = 0.0;
    double circuit_error_rate = 0.0;

    void validate() const;
    bool noiseless() const { return p == 0.0 && circuit_error_rate == 0.0; }
};

/// Entry i scaled by (1-p)^(2i). Exact vectors stay exact.
EnumeratorVector depolarize_sld(const EnumeratorVector &sld, const mpq_class &p);
EnumeratorVector depolarize_sld(const EnumeratorVector &sld, double p);

/// sum_i a_i (1-p)^(2i).
double purity_after_noise(const EnumeratorVector &sld, double p);
/// Tr[rho E_p(rho)] = sum_i a_i (1-p)^i.
double overlap_after_noise(const EnumeratorVector &sld, double p);

struct NoisyEnumerators {
    EnumeratorVector sld;
    EnumeratorVector apd;
    EnumeratorVector tpd;
};

NoisyEnumerators noisy_enumerators(const EnumeratorVector &sld, const mpq_class &p);
/// Exact SLD, APD and TPD of the locally depolarized family state.
NoisyEnumerators noisy_family_enumerators(const StateFamily &family, const mpq_class &p);

/// E_p applied to every qubit of a dense state.
DenseState depolarize_dense(const DenseState &state, double p);

enum class Criterion { n_body, purity, concurrence, fidelity };

std::string_view to_string(Criterion c);
Criterion parse_criterion(std::string_view name);

/// Margin of a criterion evaluated on an SLD; the criterion certifies
/// entanglement iff the margin is strictly positive.
///   n_body:      a_n - 2^-n
///   purity:      a'_n - a'_(n-1)
///   concurrence: 2^-n + (1 - 2^-n) Tr[rho^2] - tpd_n
///   fidelity:    Tr[rho^2] - bound, the overlap at p = 0
mpq_class criterion_margin(const EnumeratorVector &sld, Criterion c, const mpq_class &fidelity_bound = mpq_class(1, 2));

/// Margin of the criterion for E_p^n[rho] given the noiseless SLD of rho.
/// For the fidelity criterion this is sum_i a_i (1-p)^i - bound.
mpq_class criterion_margin_at(const EnumeratorVector &sld, Criterion c, const mpq_class &p,
                              const mpq_class &fidelity_bound = mpq_class(1, 2));

struct ThresholdOptions {
    double tolerance = 1e-4;
    int grid_points = 64;
    /// Required for the fidelity criterion on non-stabilizer families.
    std::optional<mpq_class> fidelity_bound;
};

struct ThresholdResult {
    double threshold = 0.0;
    /// The criterion does not certify even at p = 0.
    bool never_fires = false;
    /// The grid pre-scan saw a certifying point after a non-certifying one.
    bool non_monotone = false;
    int evaluations = 0;
};

/// Supremum of p in [0, 1] for which the criterion certifies entanglement of
/// E_p^n[rho], found by a grid pre-scan and bisection in exact arithmetic.
/// With the default bound, the fidelity criterion never fires for stabilizer
/// families that are not genuinely multipartite entangled.
ThresholdResult noise_threshold(const EnumeratorVector &sld, Criterion c, const ThresholdOptions &options = {});
ThresholdResult noise_threshold(const StateFamily &family, Criterion c, const ThresholdOptions &options = {});

}  // namespace qwe

#endif

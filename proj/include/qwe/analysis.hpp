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

// Entanglement criteria, code diagnostics and TPD structure checks evaluated
// directly on enumerator vectors.

#ifndef QWE_ANALYSIS_HPP
#define QWE_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qwe/enumerator.hpp"
#include "qwe/estimation.hpp"
#include "qwe/states.hpp"

namespace qwe {

struct Verdict {
    std::string criterion;
    double margin = 0.0;
    double tolerance = 0.0;
    bool entangled = false;
};

struct CriteriaReport {
    int n = 0;
    double purity = 1.0;
    double n_body_margin = 0.0;
    double purity_margin = 0.0;
    double concurrence_lower_bound = 0.0;
    double n_tangle = 0.0;
    /// The n-tangle reading of 2^n tpd_0 holds for pure inputs only.
    bool n_tangle_valid = false;
    int uniformity = 0;
    double zero_tolerance = 0.0;
    bool estimated = false;
    std::vector<Verdict> verdicts;

    const Verdict *find(std::string_view criterion) const;
};

struct CriteriaOptions {
    double zero_tolerance = 1e-9;
    double consistency_tolerance = 1e-6;
    double purity_tolerance = 1e-6;
};

/// Throws ContractViolation naming the first broken transform identity when
/// the three vectors disagree beyond options.consistency_tolerance.
CriteriaReport criteria_report(const EnumeratorVector &sld, const EnumeratorVector &apd,
                               const EnumeratorVector &tpd, double purity, const CriteriaOptions &options = {});

/// Estimated mode: margins come from the point estimates and each verdict
/// needs the margin to clear three standard errors of that margin.
CriteriaReport criteria_report(const EstimationReport &estimate, const CriteriaOptions &options = {});

struct DistanceResult {
    /// n + 1 when undefined.
    int distance = 0;
    bool defined = false;
    std::string note;
};

/// Smallest i > 0 with A_i < B_i on unnormalized counts (A_0 = B_0 = 1).
DistanceResult code_distance(const CodeEnumerators &enums);
/// Same rule on normalized SLD (A / 2^n) and dual SLD (B / 2^(n+k)) vectors.
/// With `round_counts` the rescaled counts are rounded to integers first.
DistanceResult code_distance(const EnumeratorVector &sld, const EnumeratorVector &dual_sld, int k,
                             bool round_counts);

struct TpdMoments {
    double mean = 0.0;
    double variance = 0.0;
    /// Variance rebuilt from the unnormalized A_1, A_2 of the matching SLD.
    double variance_via_sld = 0.0;
    double A1 = 0.0;
    double A2 = 0.0;
    bool consistent = false;
};

/// Moments of the triplet count (TPD index = number of triplets).
TpdMoments tpd_moments(const EnumeratorVector &tpd);

struct Violation {
    std::string constraint;
    /// Signed amount by which the constraint fails.
    double amount = 0.0;
};

/// Names: mean_triplets, singlet_bound, A1_range, A2_range, A3_range, ssa,
/// An_bound, two_qubit_polytope.
std::vector<Violation> tpd_admissibility(const EnumeratorVector &tpd, double tolerance = 1e-9);

/// Operator norm of the single-shot observable for entry i.
double observable_norm(VectorKind kind, int i, int n);
/// Largest shift of entry i's expectation when the two-copy state moves from
/// rho (x) rho to sigma, given ||sigma - rho (x) rho||_1.
double robustness_bound(VectorKind kind, int i, int n, double trace_distance);

}  // namespace qwe

#endif

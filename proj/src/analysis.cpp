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

#include "qwe/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/transforms.hpp"

namespace qwe {

namespace {

void require_consistent(const EnumeratorVector &sld, const EnumeratorVector &apd, const EnumeratorVector &tpd,
                        double tol) {
    require_kind(sld, VectorKind::sld, "criteria_report");
    require_kind(apd, VectorKind::apd, "criteria_report");
    require_kind(tpd, VectorKind::tpd, "criteria_report");
    if (sld.n() != apd.n() || sld.n() != tpd.n()) {
        fail_contract("criteria_report: vectors have different n");
    }
    const double d_apd = max_abs_diff(convert(sld.to_float(), VectorKind::apd), apd.to_float());
    if (d_apd > tol) {
        fail_contract("criteria_report: apd != T' sld (max deviation " + std::to_string(d_apd) + ")");
    }
    const double d_tpd = max_abs_diff(convert(sld.to_float(), VectorKind::tpd), tpd.to_float());
    if (d_tpd > tol) {
        fail_contract("criteria_report: tpd != T~ sld (max deviation " + std::to_string(d_tpd) + ")");
    }
}

struct Errors {
    std::vector<double> sld, apd, tpd;
    double purity = 0.0;
};

CriteriaReport build_report(const EnumeratorVector &sld, const EnumeratorVector &apd, const EnumeratorVector &tpd,
                            double purity, const CriteriaOptions &options, const Errors *errors) {
    const int n = sld.n();
    const double inv = std::ldexp(1.0, -n);
    CriteriaReport r;
    r.n = n;
    r.purity = purity;
    r.estimated = errors != nullptr;
    r.zero_tolerance = options.zero_tolerance;
    r.n_body_margin = sld[n] - inv;
    r.purity_margin = apd[n] - apd[n - 1];
    r.concurrence_lower_bound = inv + (1 - inv) * purity - tpd[n];
    r.n_tangle = std::ldexp(tpd[0], n);
    r.n_tangle_valid = purity >= 1 - options.purity_tolerance;

    auto tol = [&](double se) { return errors ? std::max(options.zero_tolerance, 3 * se) : options.zero_tolerance; };
    r.uniformity = 0;
    for (int i = 1; i <= n; i++) {
        if (std::abs(sld[i]) > tol(errors ? errors->sld[i] : 0.0)) break;
        r.uniformity = i;
    }
    auto add = [&](std::string name, double margin, double se) {
        double t = tol(se);
        r.verdicts.push_back({std::move(name), margin, t, margin > t});
    };
    add("n_body", r.n_body_margin, errors ? errors->sld[n] : 0.0);
    add("purity", r.purity_margin, errors ? errors->apd[n] + errors->apd[n - 1] : 0.0);
    add("concurrence", r.concurrence_lower_bound, errors ? (1 - inv) * errors->purity + errors->tpd[n] : 0.0);
    if (n == 3) {
        // Three-qubit genuine multipartite entanglement: A_3 > 3.
        add("gme_three_qubit", sld[3] - 3.0 / 8.0, errors ? errors->sld[3] : 0.0);
    }
    return r;
}

}  // namespace

const Verdict *CriteriaReport::find(std::string_view criterion) const {
    for (const auto &v : verdicts) {
        if (v.criterion == criterion) return &v;
    }
    return nullptr;
}

CriteriaReport criteria_report(const EnumeratorVector &sld, const EnumeratorVector &apd, const EnumeratorVector &tpd,
                               double purity, const CriteriaOptions &options) {
    require_consistent(sld, apd, tpd, options.consistency_tolerance);
    return build_report(sld, apd, tpd, purity, options, nullptr);
}

CriteriaReport criteria_report(const EstimationReport &est, const CriteriaOptions &options) {
    auto sld = est[VectorKind::sld].vector();
    auto apd = est[VectorKind::apd].vector();
    auto tpd = est[VectorKind::tpd].vector();
    require_consistent(sld, apd, tpd, options.consistency_tolerance);
    Errors e;
    e.sld = est[VectorKind::sld].std_error;
    e.apd = est[VectorKind::apd].std_error;
    e.tpd = est[VectorKind::tpd].std_error;
    e.purity = std::sqrt(std::max(0.0, 1 - est.purity * est.purity) / static_cast<double>(est.shots));
    return build_report(sld, apd, tpd, est.purity, options, &e);
}

namespace {

DistanceResult distance_from_counts(const std::vector<double> &A, const std::vector<double> &B, int k) {
    const int n = static_cast<int>(A.size()) - 1;
    DistanceResult r;
    for (int i = 1; i <= n; i++) {
        if (A[i] < B[i]) {
            r.distance = i;
            r.defined = true;
            return r;
        }
    }
    r.distance = n + 1;
    r.note = k == 0 ? "state, not code" : "no logical operator found";
    return r;
}

}  // namespace

DistanceResult code_distance(const CodeEnumerators &enums) {
    if (enums.A.size() != enums.B.size() || enums.A.empty()) {
        fail_contract("code_distance: A and B must have n + 1 entries");
    }
    std::vector<double> A(enums.A.begin(), enums.A.end()), B(enums.B.begin(), enums.B.end());
    return distance_from_counts(A, B, enums.k);
}

DistanceResult code_distance(const EnumeratorVector &sld, const EnumeratorVector &dual_sld, int k,
                             bool round_counts) {
    require_kind(sld, VectorKind::sld, "code_distance");
    require_kind(dual_sld, VectorKind::dual_sld, "code_distance");
    const int n = sld.n();
    if (dual_sld.n() != n || k < 0 || k > n) {
        fail_contract("code_distance: inconsistent n or k");
    }
    std::vector<double> A(n + 1), B(n + 1);
    for (int i = 0; i <= n; i++) {
        A[i] = std::ldexp(sld[i], n);
        B[i] = std::ldexp(dual_sld[i], n + k);
        if (round_counts) {
            A[i] = std::round(A[i]);
            B[i] = std::round(B[i]);
        }
    }
    return distance_from_counts(A, B, k);
}

TpdMoments tpd_moments(const EnumeratorVector &tpd) {
    require_kind(tpd, VectorKind::tpd, "tpd_moments");
    require_normalized_tpd(tpd);
    const int n = tpd.n();
    TpdMoments m;
    double second = 0;
    for (int i = 0; i <= n; i++) {
        m.mean += i * tpd[i];
        second += static_cast<double>(i) * i * tpd[i];
    }
    m.variance = second - m.mean * m.mean;
    m.A1 = 4 * m.mean - 3 * n;
    const double pairs = 0.5 * n * (n - 1);
    m.A2 = 8 * second - (12.0 * n - 4) * m.mean + 9 * pairs;

    auto sld = convert(tpd, VectorKind::sld);
    const double a1 = std::ldexp(sld[1], n);
    const double a2 = n >= 2 ? std::ldexp(sld[2], n) : 0.0;
    const double mean_s = (a1 + 3 * n) / 4;
    const double second_s = (a2 + (12.0 * n - 4) * mean_s - 9 * pairs) / 8;
    m.variance_via_sld = second_s - mean_s * mean_s;
    m.consistent = std::abs(m.variance - m.variance_via_sld) <= 1e-9 * std::max(1.0, static_cast<double>(n) * n);
    return m;
}

namespace {

// Point-in-convex-polygon with vertices in counter-clockwise order.
double polygon_slack(const std::vector<std::pair<double, double>> &poly, double x, double y) {
    double worst = 0;
    for (size_t v = 0; v < poly.size(); v++) {
        auto [x0, y0] = poly[v];
        auto [x1, y1] = poly[(v + 1) % poly.size()];
        double cross = (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0);
        worst = std::min(worst, cross);
    }
    return worst;
}

}  // namespace

std::vector<Violation> tpd_admissibility(const EnumeratorVector &tpd, double tolerance) {
    require_kind(tpd, VectorKind::tpd, "tpd_admissibility");
    require_normalized_tpd(tpd);
    const int n = tpd.n();
    std::vector<Violation> out;
    auto check = [&](const char *name, double slack) {
        if (slack < -tolerance) out.push_back({name, -slack});
    };
    auto m = tpd_moments(tpd);
    check("mean_triplets", m.mean - 0.75 * n);
    check("singlet_bound", std::ldexp(1.0, -n) - tpd[0]);

    auto sld = convert(tpd, VectorKind::sld);
    auto A = [&](int i) { return std::ldexp(sld[i], n); };
    auto range = [&](const char *name, int i) {
        const double hi = to_double(binomial(n, i));
        const double v = A(i);
        check(name, std::min(v, hi - v));
    };
    range("A1_range", 1);
    if (n >= 3) range("A2_range", 2);
    if (n >= 5) range("A3_range", 3);

    double ssa = 0;
    for (int i = 0; i <= n; i++) {
        const double c = 0.5 * (n - i) * (n - i - 1);
        ssa += c * (2 * i + 2 - n) * tpd[i];
    }
    check("ssa", ssa);
    check("An_bound", std::ldexp(1.0, n - 1) + (n % 2 == 0 ? 1 : 0) - A(n));

    if (n == 2) {
        // Vertices (a_1, a_2) of the two-qubit SLD polytope.
        const std::vector<std::pair<double, double>> poly = {{0, 0}, {0.25, 0}, {0.5, 0.25}, {0, 0.75}};
        check("two_qubit_polytope", polygon_slack(poly, sld[1], sld[2]));
    }
    return out;
}

double observable_norm(VectorKind kind, int i, int n) {
    if (n < 1 || i < 0 || i > n) {
        fail_contract("observable_norm: index outside [0, n]");
    }
    switch (kind) {
        case VectorKind::sld:
            return std::exp(i * std::log(1.5) + std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                            std::lgamma(n - i + 1.0) - (n - i) * std::log(2.0));
        case VectorKind::apd:
        case VectorKind::tpd:
            return 1.0;
        default:
            fail_contract("observable_norm: supported kinds are sld, apd, tpd");
    }
}

double robustness_bound(VectorKind kind, int i, int n, double trace_distance) {
    if (!(trace_distance >= 0)) {
        fail_contract("robustness_bound: trace distance must be non-negative");
    }
    return observable_norm(kind, i, n) * trace_distance;
}

}  // namespace qwe

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

#include "qwe/enumerator.hpp"

#include <algorithm>
#include <cmath>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"

namespace qwe {

namespace {

constexpr std::string_view kKindNames[] = {"sld", "dual_sld", "apd", "dual_apd", "tpd", "dual_tpd"};

}  // namespace

std::string_view to_string(VectorKind kind) {
    return kKindNames[static_cast<int>(kind)];
}

VectorKind parse_vector_kind(std::string_view name) {
    for (int k = 0; k < 6; k++) {
        if (kKindNames[k] == name) {
            return static_cast<VectorKind>(k);
        }
    }
    std::string alt(name);
    std::replace(alt.begin(), alt.end(), '-', '_');
    for (int k = 0; k < 6; k++) {
        if (kKindNames[k] == alt) {
            return static_cast<VectorKind>(k);
        }
    }
    fail_contract("unknown enumerator kind '" + std::string(name) + "'");
}

std::string_view to_string(Precision p) {
    return p == Precision::exact ? "exact" : "f64";
}

Precision parse_precision(std::string_view name) {
    if (name == "exact") {
        return Precision::exact;
    }
    if (name == "f64" || name == "float64" || name == "float") {
        return Precision::float64;
    }
    fail_contract("unknown precision '" + std::string(name) + "'");
}

VectorKind dual_of(VectorKind kind) {
    int k = static_cast<int>(kind);
    return static_cast<VectorKind>(k ^ 1);
}

bool is_dual(VectorKind kind) {
    return (static_cast<int>(kind) & 1) != 0;
}

EnumeratorVector::EnumeratorVector(VectorKind kind, std::vector<mpq_class> exact_values)
    : kind_(kind), precision_(Precision::exact), exact_(std::move(exact_values)) {
    if (exact_.empty()) {
        fail_contract("enumerator vector needs at least one entry");
    }
    values_.reserve(exact_.size());
    for (const auto &q : exact_) {
        values_.push_back(to_double(q));
    }
}

EnumeratorVector::EnumeratorVector(VectorKind kind, std::vector<double> values)
    : kind_(kind), precision_(Precision::float64), values_(std::move(values)) {
    if (values_.empty()) {
        fail_contract("enumerator vector needs at least one entry");
    }
}

const std::vector<mpq_class> &EnumeratorVector::exact_values() const {
    if (precision_ != Precision::exact) {
        fail_contract("exact values requested from a float enumerator vector");
    }
    return exact_;
}

EnumeratorVector EnumeratorVector::with_kind(VectorKind kind) const {
    EnumeratorVector v = *this;
    v.kind_ = kind;
    return v;
}

EnumeratorVector EnumeratorVector::to_float() const {
    return EnumeratorVector(kind_, values_);
}

double EnumeratorVector::sum() const {
    if (is_exact()) {
        return to_double(exact_sum());
    }
    double s = 0;
    for (double v : values_) {
        s += v;
    }
    return s;
}

mpq_class EnumeratorVector::exact_sum() const {
    mpq_class s = 0;
    for (const auto &q : exact_values()) {
        s += q;
    }
    return s;
}

void require_kind(const EnumeratorVector &v, VectorKind kind, std::string_view where) {
    if (v.kind() != kind) {
        fail_contract(std::string(where) + ": expected a " + std::string(to_string(kind)) + " vector, got " +
                      std::string(to_string(v.kind())));
    }
}

void require_normalized_tpd(const EnumeratorVector &tpd, double tol) {
    require_kind(tpd, VectorKind::tpd, "tpd check");
    for (size_t i = 0; i < tpd.size(); i++) {
        if (tpd[i] < -tol || std::isnan(tpd[i])) {
            fail_contract("inadmissible tpd: entry " + std::to_string(i) + " is negative (" +
                          shortest_double(tpd[i]) + ")");
        }
    }
    double s = tpd.sum();
    if (std::abs(s - 1.0) > tol) {
        fail_contract("inadmissible tpd: entries sum to " + shortest_double(s) + ", not 1");
    }
}

double max_abs_diff(const EnumeratorVector &a, const EnumeratorVector &b) {
    if (a.size() != b.size()) {
        fail_contract("max_abs_diff: length mismatch");
    }
    double m = 0;
    for (size_t i = 0; i < a.size(); i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

}  // namespace qwe

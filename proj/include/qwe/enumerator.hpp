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

#ifndef QWE_ENUMERATOR_HPP
#define QWE_ENUMERATOR_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace qwe {

enum class Precision { exact, float64 };

/// The six enumerator vectors. Index i always means Pauli weight, subsystem
/// size, or triplet count i, for i = 0..n.
enum class VectorKind { sld, dual_sld, apd, dual_apd, tpd, dual_tpd };

std::string_view to_string(VectorKind kind);
VectorKind parse_vector_kind(std::string_view name);
std::string_view to_string(Precision p);
Precision parse_precision(std::string_view name);

/// Dual counterpart: sld <-> dual_sld, apd <-> dual_apd, tpd <-> dual_tpd.
VectorKind dual_of(VectorKind kind);
bool is_dual(VectorKind kind);

/// An (n+1)-entry enumerator vector. Exact vectors carry rationals and a
/// rounded float view; float vectors carry doubles only. Immutable.
class EnumeratorVector {
 public:
    EnumeratorVector() = default;
    EnumeratorVector(VectorKind kind, std::vector<mpq_class> exact_values);
    EnumeratorVector(VectorKind kind, std::vector<double> values);

    int n() const { return static_cast<int>(values_.size()) - 1; }
    size_t size() const { return values_.size(); }
    VectorKind kind() const { return kind_; }
    Precision precision() const { return precision_; }
    bool is_exact() const { return precision_ == Precision::exact; }

    double operator[](size_t i) const { return values_[i]; }
    const std::vector<double> &values() const { return values_; }
    /// Throws ContractViolation for float vectors.
    const std::vector<mpq_class> &exact_values() const;

    /// Same values retagged; used where a relation is an identity map.
    EnumeratorVector with_kind(VectorKind kind) const;
    EnumeratorVector to_float() const;

    double sum() const;
    mpq_class exact_sum() const;

 private:
    VectorKind kind_ = VectorKind::sld;
    Precision precision_ = Precision::float64;
    std::vector<mpq_class> exact_;
    std::vector<double> values_;
};

/// Checks the TPD contract: non-negative entries summing to one within tol.
/// Throws ContractViolation naming the offending entry.
void require_normalized_tpd(const EnumeratorVector &tpd, double tol = 1e-9);
void require_kind(const EnumeratorVector &v, VectorKind kind, std::string_view where);

/// Maximum absolute entrywise difference of the float views.
double max_abs_diff(const EnumeratorVector &a, const EnumeratorVector &b);

}  // namespace qwe

#endif

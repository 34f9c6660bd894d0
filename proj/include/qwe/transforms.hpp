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

#ifndef QWE_TRANSFORMS_HPP
#define QWE_TRANSFORMS_HPP

#include <gmpxx.h>

#include <memory>
#include <string_view>
#include <vector>

#include "qwe/enumerator.hpp"

namespace qwe {

/// The nine linear maps between enumerator kinds.
///
///   M                 sld -> dual_sld   (involution)
///   M_prime           apd -> dual_apd   (antidiagonal involution)
///   M_tilde           tpd -> dual_tpd   (diagonal involution)
///   T_prime           sld -> apd
///   T_prime_inv       apd -> sld
///   T_tilde           sld -> tpd
///   T_tilde_inv       tpd -> sld
///   T_tilde_prime     apd -> tpd
///   T_tilde_prime_inv tpd -> apd
///
/// The basis changes commute with dualization, so each T-type map also takes
/// the dual of its source to the dual of its target. The involutions map in
/// both directions.
enum class TransformKind {
    M,
    M_prime,
    M_tilde,
    T_prime,
    T_prime_inv,
    T_tilde,
    T_tilde_inv,
    T_tilde_prime,
    T_tilde_prime_inv,
};

std::string_view to_string(TransformKind kind);
TransformKind parse_transform_kind(std::string_view name);
VectorKind source_kind(TransformKind kind);
VectorKind target_kind(TransformKind kind);
TransformKind inverse_of(TransformKind kind);

/// Dense square matrix of exact rationals, row-major.
class ExactMatrix {
 public:
    ExactMatrix() = default;
    explicit ExactMatrix(int dim);
    static ExactMatrix identity(int dim);

    int dim() const { return dim_; }
    mpq_class &at(int i, int j) { return entries_[static_cast<size_t>(i) * dim_ + j]; }
    const mpq_class &at(int i, int j) const { return entries_[static_cast<size_t>(i) * dim_ + j]; }
    const std::vector<mpq_class> &entries() const { return entries_; }

    bool operator==(const ExactMatrix &other) const;

 private:
    int dim_ = 0;
    std::vector<mpq_class> entries_;
};

/// Exact product. Works on a common-denominator integer form, so cost is
/// dominated by integer multiply-adds rather than rational normalization.
ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b);

struct TransformOptions {
    /// Largest n accepted in float mode; beyond it entries leave double range.
    int float_limit = 1029;
    /// Largest n accepted in exact mode (memory guard).
    int exact_limit = 4096;
};

/// One of the nine maps at a fixed n. Immutable after construction.
class TransformMatrix {
 public:
    TransformMatrix(TransformKind kind, int n, Precision precision, std::vector<double> values,
                    ExactMatrix exact);

    int n() const { return n_; }
    int dim() const { return n_ + 1; }
    TransformKind kind() const { return kind_; }
    Precision precision() const { return precision_; }

    /// Float view. In exact mode at large n, entries beyond double range are +-inf.
    double operator()(int i, int j) const { return values_[static_cast<size_t>(i) * (n_ + 1) + j]; }
    const std::vector<double> &values() const { return values_; }
    /// Throws ContractViolation in float mode.
    const ExactMatrix &exact() const;

 private:
    TransformKind kind_;
    int n_;
    Precision precision_;
    std::vector<double> values_;
    ExactMatrix exact_;
};

TransformMatrix build_transform(TransformKind kind, int n, Precision precision,
                                const TransformOptions &options = {});

/// Shared, lazily built matrices. Safe for concurrent use.
std::shared_ptr<const TransformMatrix> cached_transform(TransformKind kind, int n, Precision precision);

EnumeratorVector apply_transform(const TransformMatrix &matrix, const EnumeratorVector &vec);

/// Converts between any two enumerator kinds by composing the maps above.
/// Exact vectors stay exact.
EnumeratorVector convert(const EnumeratorVector &vec, VectorKind target);

/// Largest singular value. Signed permutation matrices (M', M~) return their
/// entry magnitude directly; everything else uses power iteration on A^T A
/// without squaring entries.
double operator_norm(const TransformMatrix &matrix, int max_iterations = 200000, double rel_tol = 1e-10);
double spectral_norm(const std::vector<double> &row_major, int dim, int max_iterations = 200000,
                     double rel_tol = 1e-10);

/// Integer lattice K with K[i][j] = [x^i] (1+3x)^(n-j) (1-x)^j, built by the
/// four-term recurrence. M = K / 2^n; T~ and T~^-1 follow by sign flips.
std::vector<mpz_class> macwilliams_lattice(int n);
/// Integer lattice U with U[i][j] = [x^i] (1-x)^(n-j) (1+x)^j, built by the
/// 2x2-block recurrence. T~'^-1 = U / C(n, i).
std::vector<mpz_class> unitary_shadow_lattice(int n);

}  // namespace qwe

#endif

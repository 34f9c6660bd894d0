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

#include "qwe/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"

namespace qwe {

namespace {

constexpr std::string_view kTransformNames[] = {
    "M", "M_prime", "M_tilde", "T_prime", "T_prime_inv", "T_tilde", "T_tilde_inv", "T_tilde_prime",
    "T_tilde_prime_inv",
};

bool is_involution(TransformKind kind) {
    return kind == TransformKind::M || kind == TransformKind::M_prime || kind == TransformKind::M_tilde;
}

size_t idx(int n, int i, int j) {
    return static_cast<size_t>(i) * (n + 1) + j;
}

// Numerator lattice plus a denominator rule; entry (i, j) = num[i][j] / den(i, j).
struct Fractions {
    std::vector<mpz_class> num;
    // Either a per-row or a per-column denominator, or a single power of two.
    enum class DenKind { one, pow2_n, row, col_pow2 } den_kind = DenKind::one;
    std::vector<mpz_class> den;
};

Fractions fractions_for(TransformKind kind, int n) {
    Fractions f;
    const size_t d = static_cast<size_t>(n) + 1;
    f.num.assign(d * d, mpz_class(0));
    std::vector<mpz_class> cn = binomial_row(n);
    switch (kind) {
        case TransformKind::M:
        case TransformKind::T_tilde:
        case TransformKind::T_tilde_inv: {
            f.num = macwilliams_lattice(n);
            f.den_kind = Fractions::DenKind::pow2_n;
            if (kind == TransformKind::T_tilde) {
                for (int i = 0; i <= n; i++) {
                    for (int j = 1; j <= n; j += 2) {
                        f.num[idx(n, i, j)] = -f.num[idx(n, i, j)];
                    }
                }
            } else if (kind == TransformKind::T_tilde_inv) {
                for (int i = 1; i <= n; i += 2) {
                    for (int j = 0; j <= n; j++) {
                        f.num[idx(n, i, j)] = -f.num[idx(n, i, j)];
                    }
                }
            }
            break;
        }
        case TransformKind::M_prime:
            for (int i = 0; i <= n; i++) {
                f.num[idx(n, i, n - i)] = 1;
            }
            break;
        case TransformKind::M_tilde:
            for (int i = 0; i <= n; i++) {
                f.num[idx(n, i, i)] = ((n + i) % 2 == 0) ? 1 : -1;
            }
            break;
        case TransformKind::T_prime: {
            // 2^(n-i) C(n-j, n-i) / C(n, i)
            f.den_kind = Fractions::DenKind::row;
            f.den = cn;
            for (int j = 0; j <= n; j++) {
                std::vector<mpz_class> row = binomial_row(n - j);
                for (int i = j; i <= n; i++) {
                    mpz_class v = row[n - i];
                    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n - i));
                    f.num[idx(n, i, j)] = v;
                }
            }
            break;
        }
        case TransformKind::T_prime_inv: {
            // C(n, j) C(n-j, n-i) (-1)^(i+j) / 2^(n-j)
            f.den_kind = Fractions::DenKind::col_pow2;
            for (int j = 0; j <= n; j++) {
                std::vector<mpz_class> row = binomial_row(n - j);
                for (int i = j; i <= n; i++) {
                    mpz_class v = cn[j] * row[n - i];
                    f.num[idx(n, i, j)] = ((i + j) % 2 == 0) ? v : mpz_class(-v);
                }
            }
            break;
        }
        case TransformKind::T_tilde_prime: {
            // C(n, j) (-1)^j U[i][n-j] / 2^n
            std::vector<mpz_class> u = unitary_shadow_lattice(n);
            f.den_kind = Fractions::DenKind::pow2_n;
            for (int i = 0; i <= n; i++) {
                for (int j = 0; j <= n; j++) {
                    mpz_class v = cn[j] * u[idx(n, i, n - j)];
                    f.num[idx(n, i, j)] = (j % 2 == 0) ? v : mpz_class(-v);
                }
            }
            break;
        }
        case TransformKind::T_tilde_prime_inv:
            f.num = unitary_shadow_lattice(n);
            f.den_kind = Fractions::DenKind::row;
            f.den = cn;
            break;
    }
    return f;
}

}  // namespace

std::string_view to_string(TransformKind kind) {
    return kTransformNames[static_cast<int>(kind)];
}

TransformKind parse_transform_kind(std::string_view name) {
    for (int k = 0; k < 9; k++) {
        if (kTransformNames[k] == name) {
            return static_cast<TransformKind>(k);
        }
    }
    fail_contract("unknown transform '" + std::string(name) + "'");
}

VectorKind source_kind(TransformKind kind) {
    switch (kind) {
        case TransformKind::M:
        case TransformKind::T_prime:
        case TransformKind::T_tilde:
            return VectorKind::sld;
        case TransformKind::M_prime:
        case TransformKind::T_prime_inv:
        case TransformKind::T_tilde_prime:
            return VectorKind::apd;
        case TransformKind::M_tilde:
        case TransformKind::T_tilde_inv:
        case TransformKind::T_tilde_prime_inv:
            return VectorKind::tpd;
    }
    fail_contract("unknown transform kind");
}

VectorKind target_kind(TransformKind kind) {
    switch (kind) {
        case TransformKind::M:
            return VectorKind::dual_sld;
        case TransformKind::M_prime:
            return VectorKind::dual_apd;
        case TransformKind::M_tilde:
            return VectorKind::dual_tpd;
        case TransformKind::T_prime:
        case TransformKind::T_tilde_prime_inv:
            return VectorKind::apd;
        case TransformKind::T_prime_inv:
        case TransformKind::T_tilde_inv:
            return VectorKind::sld;
        case TransformKind::T_tilde:
        case TransformKind::T_tilde_prime:
            return VectorKind::tpd;
    }
    fail_contract("unknown transform kind");
}

TransformKind inverse_of(TransformKind kind) {
    switch (kind) {
        case TransformKind::T_prime:
            return TransformKind::T_prime_inv;
        case TransformKind::T_prime_inv:
            return TransformKind::T_prime;
        case TransformKind::T_tilde:
            return TransformKind::T_tilde_inv;
        case TransformKind::T_tilde_inv:
            return TransformKind::T_tilde;
        case TransformKind::T_tilde_prime:
            return TransformKind::T_tilde_prime_inv;
        case TransformKind::T_tilde_prime_inv:
            return TransformKind::T_tilde_prime;
        default:
            return kind;
    }
}

ExactMatrix::ExactMatrix(int dim) : dim_(dim), entries_(static_cast<size_t>(dim) * dim) {
}

ExactMatrix ExactMatrix::identity(int dim) {
    ExactMatrix m(dim);
    for (int i = 0; i < dim; i++) {
        m.at(i, i) = 1;
    }
    return m;
}

bool ExactMatrix::operator==(const ExactMatrix &other) const {
    return dim_ == other.dim_ && entries_ == other.entries_;
}

namespace {

// Scales a rational matrix to integers: returns numerators and the common denominator.
std::pair<std::vector<mpz_class>, mpz_class> integer_form(const ExactMatrix &m) {
    mpz_class den = 1;
    for (const auto &q : m.entries()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<mpz_class> num(m.entries().size());
    for (size_t k = 0; k < num.size(); k++) {
        const mpq_class &q = m.entries()[k];
        mpz_divexact(num[k].get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        num[k] *= q.get_num();
    }
    return {std::move(num), den};
}

}  // namespace

ExactMatrix operator*(const ExactMatrix &a, const ExactMatrix &b) {
    if (a.dim() != b.dim()) {
        fail_contract("matrix product: dimension mismatch");
    }
    const int d = a.dim();
    auto [na, da] = integer_form(a);
    auto [nb, db] = integer_form(b);
    mpz_class den = da * db;
    ExactMatrix out(d);
    mpz_class acc;
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            acc = 0;
            for (int k = 0; k < d; k++) {
                const mpz_class &x = na[static_cast<size_t>(i) * d + k];
                if (sgn(x) == 0) {
                    continue;
                }
                mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), nb[static_cast<size_t>(k) * d + j].get_mpz_t());
            }
            mpq_class &q = out.at(i, j);
            q.get_num() = acc;
            q.get_den() = den;
            q.canonicalize();
        }
    }
    return out;
}

std::vector<mpz_class> macwilliams_lattice(int n) {
    if (n < 0) {
        fail_contract("macwilliams_lattice: n must be non-negative");
    }
    const size_t d = static_cast<size_t>(n) + 1;
    std::vector<mpz_class> k(d * d);
    std::vector<mpz_class> cn = binomial_row(n);
    for (int j = 0; j <= n; j++) {
        k[idx(n, 0, j)] = 1;
    }
    mpz_class t;
    for (int i = 1; i <= n; i++) {
        k[idx(n, i, n)] = (i % 2 == 0) ? cn[i] : mpz_class(-cn[i]);
        for (int j = n - 1; j >= 0; j--) {
            mpz_class &out = k[idx(n, i, j)];
            mpz_add(out.get_mpz_t(), k[idx(n, i - 1, j)].get_mpz_t(), k[idx(n, i, j + 1)].get_mpz_t());
            mpz_addmul_ui(out.get_mpz_t(), k[idx(n, i - 1, j + 1)].get_mpz_t(), 3);
        }
    }
    return k;
}

std::vector<mpz_class> unitary_shadow_lattice(int n) {
    if (n < 0) {
        fail_contract("unitary_shadow_lattice: n must be non-negative");
    }
    const size_t d = static_cast<size_t>(n) + 1;
    std::vector<mpz_class> u(d * d);
    std::vector<mpz_class> cn = binomial_row(n);
    for (int j = 0; j <= n; j++) {
        u[idx(n, 0, j)] = 1;
    }
    for (int i = 1; i <= n; i++) {
        u[idx(n, i, 0)] = (i % 2 == 0) ? cn[i] : mpz_class(-cn[i]);
        for (int j = 1; j <= n; j++) {
            mpz_class &out = u[idx(n, i, j)];
            mpz_add(out.get_mpz_t(), u[idx(n, i, j - 1)].get_mpz_t(), u[idx(n, i - 1, j - 1)].get_mpz_t());
            mpz_add(out.get_mpz_t(), out.get_mpz_t(), u[idx(n, i - 1, j)].get_mpz_t());
        }
    }
    return u;
}

TransformMatrix::TransformMatrix(TransformKind kind, int n, Precision precision, std::vector<double> values,
                                 ExactMatrix exact)
    : kind_(kind), n_(n), precision_(precision), values_(std::move(values)), exact_(std::move(exact)) {
}

const ExactMatrix &TransformMatrix::exact() const {
    if (precision_ != Precision::exact) {
        fail_contract("exact entries requested from a float transform matrix");
    }
    return exact_;
}

TransformMatrix build_transform(TransformKind kind, int n, Precision precision, const TransformOptions &options) {
    if (static_cast<int>(kind) < 0 || static_cast<int>(kind) > 8) {
        fail_contract("unknown transform kind");
    }
    if (n < 1) {
        fail_contract("build_transform: n must be at least 1, got " + std::to_string(n));
    }
    if (precision == Precision::float64 && n > options.float_limit) {
        throw PrecisionError("build_transform: n = " + std::to_string(n) + " exceeds the float limit " +
                             std::to_string(options.float_limit));
    }
    if (precision == Precision::exact && n > options.exact_limit) {
        fail_resource("build_transform: n = " + std::to_string(n) + " exceeds the exact limit " +
                      std::to_string(options.exact_limit));
    }
    Fractions f = fractions_for(kind, n);
    const int d = n + 1;
    std::vector<double> values(static_cast<size_t>(d) * d);
    ExactMatrix exact = precision == Precision::exact ? ExactMatrix(d) : ExactMatrix();
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            const mpz_class &num = f.num[idx(n, i, j)];
            double v = 0;
            switch (f.den_kind) {
                case Fractions::DenKind::one:
                    v = num.get_d();
                    if (precision == Precision::exact) {
                        exact.at(i, j) = num;
                    }
                    break;
                case Fractions::DenKind::pow2_n:
                case Fractions::DenKind::col_pow2: {
                    unsigned long shift = f.den_kind == Fractions::DenKind::pow2_n ? n : n - j;
                    v = to_double_shifted(num, shift);
                    if (precision == Precision::exact) {
                        mpq_class &q = exact.at(i, j);
                        q.get_num() = num;
                        q.get_den() = pow2(shift);
                        q.canonicalize();
                    }
                    break;
                }
                case Fractions::DenKind::row:
                    v = to_double(num, f.den[i]);
                    if (precision == Precision::exact) {
                        mpq_class &q = exact.at(i, j);
                        q.get_num() = num;
                        q.get_den() = f.den[i];
                        q.canonicalize();
                    }
                    break;
            }
            if (precision == Precision::float64 && !std::isfinite(v)) {
                throw PrecisionError("build_transform: " + std::string(to_string(kind)) + " entry (" +
                                     std::to_string(i) + ", " + std::to_string(j) + ") overflows double at n = " +
                                     std::to_string(n));
            }
            values[static_cast<size_t>(i) * d + j] = v;
        }
    }
    return TransformMatrix(kind, n, precision, std::move(values), std::move(exact));
}

std::shared_ptr<const TransformMatrix> cached_transform(TransformKind kind, int n, Precision precision) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::shared_ptr<const TransformMatrix>> cache;
    auto key = std::make_tuple(static_cast<int>(kind), n, static_cast<int>(precision));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) {
            return it->second;
        }
    }
    auto built = std::make_shared<const TransformMatrix>(build_transform(kind, n, precision));
    std::lock_guard<std::mutex> lock(mu);
    auto [it, inserted] = cache.emplace(key, built);
    return it->second;
}

namespace {

VectorKind result_kind(TransformKind kind, VectorKind in) {
    VectorKind src = source_kind(kind);
    VectorKind dst = target_kind(kind);
    if (in == src) {
        return dst;
    }
    if (is_involution(kind) && in == dst) {
        return src;
    }
    if (!is_involution(kind) && in == dual_of(src)) {
        return dual_of(dst);
    }
    fail_contract("apply_transform: " + std::string(to_string(kind)) + " cannot act on a " +
                  std::string(to_string(in)) + " vector (expects " + std::string(to_string(src)) + ")");
}

}  // namespace

EnumeratorVector apply_transform(const TransformMatrix &matrix, const EnumeratorVector &vec) {
    if (matrix.n() != vec.n()) {
        fail_contract("apply_transform: matrix has n = " + std::to_string(matrix.n()) + " but vector has n = " +
                      std::to_string(vec.n()));
    }
    VectorKind out_kind = result_kind(matrix.kind(), vec.kind());
    const int n = matrix.n();
    const int d = n + 1;
    const bool exact = matrix.precision() == Precision::exact && vec.is_exact();

    if (matrix.kind() == TransformKind::M_prime || matrix.kind() == TransformKind::M_tilde) {
        const bool flip = matrix.kind() == TransformKind::M_prime;
        if (exact) {
            std::vector<mpq_class> out(d);
            for (int i = 0; i < d; i++) {
                out[i] = flip ? vec.exact_values()[n - i] : vec.exact_values()[i];
                if (!flip && (n + i) % 2 != 0) {
                    out[i] = -out[i];
                }
            }
            return EnumeratorVector(out_kind, std::move(out));
        }
        std::vector<double> out(d);
        for (int i = 0; i < d; i++) {
            out[i] = flip ? vec[n - i] : ((n + i) % 2 == 0 ? vec[i] : -vec[i]);
        }
        return EnumeratorVector(out_kind, std::move(out));
    }

    if (exact) {
        const ExactMatrix &m = matrix.exact();
        const auto &v = vec.exact_values();
        std::vector<mpq_class> out(d);
        mpq_class term;
        for (int i = 0; i < d; i++) {
            mpq_class acc = 0;
            for (int j = 0; j < d; j++) {
                const mpq_class &e = m.at(i, j);
                if (sgn(e) == 0 || sgn(v[j]) == 0) {
                    continue;
                }
                mpq_mul(term.get_mpq_t(), e.get_mpq_t(), v[j].get_mpq_t());
                acc += term;
            }
            out[i] = std::move(acc);
        }
        return EnumeratorVector(out_kind, std::move(out));
    }
    std::vector<double> out(d, 0.0);
    for (int i = 0; i < d; i++) {
        long double acc = 0;
        for (int j = 0; j < d; j++) {
            double e = matrix(i, j);
            if (e != 0.0) {
                acc += static_cast<long double>(e) * vec[j];
            }
        }
        out[i] = static_cast<double>(acc);
    }
    return EnumeratorVector(out_kind, std::move(out));
}

namespace {

TransformKind involution_for(VectorKind primal) {
    switch (primal) {
        case VectorKind::sld:
            return TransformKind::M;
        case VectorKind::apd:
            return TransformKind::M_prime;
        default:
            return TransformKind::M_tilde;
    }
}

VectorKind primal_of(VectorKind kind) {
    return is_dual(kind) ? dual_of(kind) : kind;
}

TransformKind direct_route(VectorKind from, VectorKind to) {
    using V = VectorKind;
    if (from == V::sld && to == V::apd) return TransformKind::T_prime;
    if (from == V::apd && to == V::sld) return TransformKind::T_prime_inv;
    if (from == V::sld && to == V::tpd) return TransformKind::T_tilde;
    if (from == V::tpd && to == V::sld) return TransformKind::T_tilde_inv;
    if (from == V::apd && to == V::tpd) return TransformKind::T_tilde_prime;
    return TransformKind::T_tilde_prime_inv;
}

}  // namespace

EnumeratorVector convert(const EnumeratorVector &vec, VectorKind target) {
    if (vec.kind() == target) {
        return vec;
    }
    const Precision prec = vec.is_exact() ? Precision::exact : Precision::float64;
    const int n = vec.n();
    EnumeratorVector v = vec;
    VectorKind from = primal_of(vec.kind());
    VectorKind to = primal_of(target);
    const bool src_dual = is_dual(vec.kind());
    const bool dst_dual = is_dual(target);
    if (src_dual && !dst_dual) {
        v = apply_transform(*cached_transform(involution_for(from), n, prec), v);
    }
    if (from != to) {
        v = apply_transform(*cached_transform(direct_route(from, to), n, prec), v);
    }
    if (!src_dual && dst_dual) {
        v = apply_transform(*cached_transform(involution_for(to), n, prec), v);
    }
    if (v.kind() != target) {
        throw InternalError("convert: reached " + std::string(to_string(v.kind())) + " instead of " +
                            std::string(to_string(target)));
    }
    return v;
}

double spectral_norm(const std::vector<double> &a, int dim, int max_iterations, double rel_tol) {
    const size_t d = static_cast<size_t>(dim);
    double scale = 0;
    for (double x : a) {
        if (!std::isfinite(x)) {
            throw PrecisionError("spectral_norm: matrix has non-finite entries");
        }
        scale = std::max(scale, std::abs(x));
    }
    if (scale == 0) {
        return 0;
    }
    std::vector<double> v(d), u(d), w(d);
    // Fixed, non-symmetric start vector so no singular direction is missed by symmetry.
    uint64_t state = 0x9E3779B97F4A7C15ull;
    double norm = 0;
    for (size_t k = 0; k < d; k++) {
        state ^= state >> 12;
        state ^= state << 25;
        state ^= state >> 27;
        v[k] = 0.5 + static_cast<double>((state * 2685821657736338717ull) >> 11) * 0x1.0p-53;
        norm += v[k] * v[k];
    }
    for (double &x : v) {
        x /= std::sqrt(norm);
    }
    double sigma = 0;
    for (int it = 0; it < max_iterations; it++) {
        for (size_t i = 0; i < d; i++) {
            double acc = 0;
            const double *row = &a[i * d];
            for (size_t j = 0; j < d; j++) {
                acc += (row[j] / scale) * v[j];
            }
            u[i] = acc;
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (size_t i = 0; i < d; i++) {
            const double *row = &a[i * d];
            for (size_t j = 0; j < d; j++) {
                w[j] += (row[j] / scale) * u[i];
            }
        }
        double wn = 0;
        for (double x : w) {
            wn += x * x;
        }
        wn = std::sqrt(wn);
        if (wn == 0) {
            return 0;
        }
        for (size_t j = 0; j < d; j++) {
            v[j] = w[j] / wn;
        }
        double next = std::sqrt(wn);
        if (it > 0 && std::abs(next - sigma) <= rel_tol * next) {
            return next * scale;
        }
        sigma = next;
    }
    throw NumericError("spectral_norm: power iteration did not converge in " + std::to_string(max_iterations) +
                       " iterations");
}

double operator_norm(const TransformMatrix &matrix, int max_iterations, double rel_tol) {
    const int d = matrix.dim();
    const auto &a = matrix.values();
    // Signed permutation matrices have norm equal to their common entry magnitude.
    bool signed_perm = true;
    double magnitude = -1;
    for (int i = 0; i < d && signed_perm; i++) {
        int nonzero = 0;
        for (int j = 0; j < d; j++) {
            double x = a[static_cast<size_t>(i) * d + j];
            if (x != 0) {
                nonzero++;
                if (magnitude < 0) {
                    magnitude = std::abs(x);
                } else if (std::abs(x) != magnitude) {
                    signed_perm = false;
                }
            }
        }
        if (nonzero != 1) {
            signed_perm = false;
        }
    }
    if (signed_perm) {
        std::vector<int> hits(d, 0);
        for (int i = 0; i < d; i++) {
            for (int j = 0; j < d; j++) {
                if (a[static_cast<size_t>(i) * d + j] != 0) {
                    hits[j]++;
                }
            }
        }
        if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) {
            return magnitude;
        }
    }
    return spectral_norm(a, d, max_iterations, rel_tol);
}

}  // namespace qwe

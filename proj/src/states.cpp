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

#include "qwe/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <sstream>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/transforms.hpp"

namespace qwe {

namespace {

using cplx = std::complex<double>;

void require_dense_n(int n, std::string_view where) {
    if (n < 1) {
        fail_contract(std::string(where) + ": need at least one qubit");
    }
    if (n > kDenseQubitLimit) {
        fail_resource(std::string(where) + ": dense states are limited to n <= " + std::to_string(kDenseQubitLimit) +
                      ", got n = " + std::to_string(n));
    }
}

template <typename T>
void walsh_hadamard(std::vector<T> &f) {
    const size_t len = f.size();
    for (size_t h = 1; h < len; h <<= 1) {
        for (size_t i = 0; i < len; i += 2 * h) {
            for (size_t j = i; j < i + h; j++) {
                T a = f[j];
                T b = f[j + h];
                f[j] = a + b;
                f[j + h] = a - b;
            }
        }
    }
}

// Tr[rho P] for every Pauli P = i^(x.z) X^x Z^z, indexed by x | (z << n) over basis-index bits.
std::vector<double> pauli_expectations(const Eigen::MatrixXcd &rho, int n) {
    const size_t d = size_t{1} << n;
    std::vector<double> out(d * d);
    std::vector<cplx> f(d);
    static const cplx kPhase[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    for (size_t x = 0; x < d; x++) {
        for (size_t b = 0; b < d; b++) {
            f[b] = rho(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b ^ x));
        }
        walsh_hadamard(f);
        for (size_t z = 0; z < d; z++) {
            out[x | (z << n)] = (kPhase[std::popcount(x & z) & 3] * f[z]).real();
        }
    }
    return out;
}

}  // namespace

DenseState::DenseState(int n, Eigen::MatrixXcd rho, bool validate) : n_(n), rho_(std::move(rho)) {
    require_dense_n(n, "DenseState");
    const Eigen::Index d = Eigen::Index{1} << n;
    if (rho_.rows() != d || rho_.cols() != d) {
        fail_contract("DenseState: matrix must be " + std::to_string(d) + "x" + std::to_string(d));
    }
    if (!validate) {
        return;
    }
    double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-12) {
        fail_contract("DenseState: matrix is not Hermitian (deviation " + shortest_double(herm) + ")");
    }
    double tr = rho_.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) {
        fail_contract("DenseState: trace is " + shortest_double(tr) + ", not 1");
    }
    Eigen::MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
    double min_eig;
    if (n <= 8) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        min_eig = es.eigenvalues().minCoeff();
    } else {
        Eigen::LDLT<Eigen::MatrixXcd> ldlt(h + 1e-10 * Eigen::MatrixXcd::Identity(d, d));
        min_eig = ldlt.info() == Eigen::Success && ldlt.isPositive() ? 0.0 : -1.0;
    }
    if (min_eig < -1e-10) {
        fail_contract("DenseState: matrix is not positive semidefinite (eigenvalue " + shortest_double(min_eig) + ")");
    }
}

DenseState DenseState::from_vector(int n, const Eigen::VectorXcd &psi) {
    require_dense_n(n, "DenseState::from_vector");
    double norm = psi.norm();
    if (norm == 0) {
        fail_contract("DenseState::from_vector: zero vector");
    }
    Eigen::VectorXcd v = psi / norm;
    return DenseState(n, v * v.adjoint());
}

DenseState DenseState::maximally_mixed(int n) {
    require_dense_n(n, "DenseState::maximally_mixed");
    const Eigen::Index d = Eigen::Index{1} << n;
    return DenseState(n, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d), false);
}

double DenseState::purity() const {
    return (rho_.array() * rho_.conjugate().array()).real().sum();
}

EnumeratorVector sld_from_dense(const DenseState &state) {
    const int n = state.n();
    const size_t d = size_t{1} << n;
    std::vector<double> t = pauli_expectations(state.matrix(), n);
    std::vector<double> a(n + 1, 0.0);
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            double v = t[x | (z << n)];
            a[std::popcount(x | z)] += v * v;
        }
    }
    for (double &v : a) {
        v = std::ldexp(v, -n);
    }
    return EnumeratorVector(VectorKind::sld, std::move(a));
}

EnumeratorVector apd_from_dense(const DenseState &state) {
    const int n = state.n();
    const size_t d = size_t{1} << n;
    std::vector<double> t = pauli_expectations(state.matrix(), n);
    // Squared expectations bucketed by support, then summed over sub-supports:
    // Tr[rho_S^2] = 2^-|S| * sum over P supported inside S of Tr[rho P]^2.
    std::vector<double> w(d, 0.0);
    for (size_t x = 0; x < d; x++) {
        for (size_t z = 0; z < d; z++) {
            double v = t[x | (z << n)];
            w[x | z] += v * v;
        }
    }
    for (size_t bit = 1; bit < d; bit <<= 1) {
        for (size_t m = 0; m < d; m++) {
            if (m & bit) {
                w[m] += w[m ^ bit];
            }
        }
    }
    std::vector<double> ap(n + 1, 0.0);
    for (size_t m = 0; m < d; m++) {
        int k = std::popcount(m);
        ap[k] += std::ldexp(w[m], -k);
    }
    for (int i = 0; i <= n; i++) {
        ap[i] /= binomial_double(n, i);
    }
    ap[0] = 1.0;
    return EnumeratorVector(VectorKind::apd, std::move(ap));
}

DenseState spin_flip(const DenseState &state) {
    const int n = state.n();
    const Eigen::Index d = state.dim();
    const Eigen::Index all = d - 1;
    const auto &rho = state.matrix();
    Eigen::MatrixXcd out(d, d);
    for (Eigen::Index a = 0; a < d; a++) {
        for (Eigen::Index b = 0; b < d; b++) {
            int parity = (std::popcount(static_cast<uint64_t>(a)) + std::popcount(static_cast<uint64_t>(b))) & 1;
            cplx v = rho(b ^ all, a ^ all);
            out(a, b) = parity ? -v : v;
        }
    }
    return DenseState(n, std::move(out), false);
}

EnumeratorVector tpd_from_dense(const DenseState &state) {
    const int n = state.n();
    const size_t d = size_t{1} << n;
    std::vector<double> r = pauli_expectations(state.matrix(), n);
    {
        std::vector<double> t = pauli_expectations(spin_flip(state).matrix(), n);
        for (size_t k = 0; k < r.size(); k++) {
            r[k] *= t[k];
        }
    }
    // g(P) = sum_Q Tr[rho Q] Tr[rho~ Q] (-1)^<P,Q>; the symplectic pairing is a
    // plain Walsh-Hadamard transform with x and z halves of the index swapped.
    walsh_hadamard(r);
    std::vector<double> tpd(n + 1, 0.0);
    const size_t mask = d - 1;
    for (size_t k = 0; k < r.size(); k++) {
        tpd[std::popcount((k & mask) | (k >> n))] += r[k];
    }
    for (double &v : tpd) {
        v = std::ldexp(v, -2 * n);
    }
    return EnumeratorVector(VectorKind::tpd, std::move(tpd));
}

// ---------------------------------------------------------------------------
// Stabilizer groups.

StabilizerGroup::StabilizerGroup(int n, std::vector<PauliString> generators)
    : n_(n), generators_(std::move(generators)) {
    if (n < 1) {
        fail_contract("StabilizerGroup: need at least one qubit");
    }
    for (size_t g = 0; g < generators_.size(); g++) {
        if (generators_[g].n() != n) {
            fail_contract("StabilizerGroup: generator " + std::to_string(g) + " has length " +
                          std::to_string(generators_[g].n()) + ", expected " + std::to_string(n));
        }
        if (generators_[g].is_identity()) {
            fail_contract("StabilizerGroup: generator " + std::to_string(g) + " is the identity");
        }
        for (size_t h = 0; h < g; h++) {
            if (!generators_[g].commutes(generators_[h])) {
                fail_contract("StabilizerGroup: generators " + std::to_string(h) + " and " + std::to_string(g) +
                              " anticommute");
            }
        }
    }
    std::vector<gf2::Row> rows;
    for (const auto &g : generators_) {
        rows.push_back(g.bits());
    }
    if (!rows.empty() && gf2::rank(rows) != static_cast<int>(rows.size())) {
        fail_contract("StabilizerGroup: generators are not independent over GF(2)");
    }
}

StabilizerGroup StabilizerGroup::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::vector<PauliString> gens;
    int n = -1;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) {
            continue;
        }
        PauliString p;
        try {
            p = PauliString::parse(tok);
        } catch (const ContractViolation &e) {
            fail_contract("stabilizer line " + std::to_string(line_no) + ": " + e.what());
        }
        if (n >= 0 && p.n() != n) {
            fail_contract("stabilizer line " + std::to_string(line_no) + ": length " + std::to_string(p.n()) +
                          " differs from " + std::to_string(n));
        }
        n = p.n();
        gens.push_back(std::move(p));
    }
    if (n < 0) {
        fail_contract("stabilizer file contains no generators");
    }
    return StabilizerGroup(n, std::move(gens));
}

StabilizerGroup StabilizerGroup::steane() {
    return parse("XIXIXIX\nIXXIIXX\nIIIXXXX\nZIZIZIZ\nIZZIIZZ\nIIIZZZZ\n");
}

std::vector<PauliString> StabilizerGroup::normalizer_basis() const {
    // <P, S> = P.x . S.z + P.z . S.x, so the check row for S is (S.z | S.x).
    std::vector<gf2::Row> rows;
    for (const auto &g : generators_) {
        gf2::Row r(2 * static_cast<size_t>(n_));
        for (int q = 0; q < n_; q++) {
            r[q] = g.z(q);
            r[n_ + q] = g.x(q);
        }
        rows.push_back(std::move(r));
    }
    if (rows.empty()) {
        rows.push_back(gf2::Row(2 * static_cast<size_t>(n_), 0));
    }
    std::vector<PauliString> basis;
    for (const auto &v : gf2::nullspace(rows, 2 * n_)) {
        basis.push_back(PauliString::from_bits(n_, v));
    }
    return basis;
}

PauliString StabilizerGroup::shadow_element() const {
    if (generators_.empty()) {
        return PauliString(n_);
    }
    std::vector<gf2::Row> rows;
    std::vector<uint8_t> rhs;
    for (const auto &g : generators_) {
        gf2::Row r(2 * static_cast<size_t>(n_));
        for (int q = 0; q < n_; q++) {
            r[q] = g.z(q);
            r[n_ + q] = g.x(q);
        }
        rows.push_back(std::move(r));
        rhs.push_back(static_cast<uint8_t>(g.weight() & 1));
    }
    auto sol = gf2::solve(rows, rhs, 2 * n_);
    if (!sol) {
        throw InternalError("shadow_element: independent generators gave an inconsistent system");
    }
    return PauliString::from_bits(n_, *sol);
}

std::vector<uint8_t> StabilizerGroup::syndrome(const PauliString &error) const {
    std::vector<uint8_t> s(generators_.size());
    for (size_t g = 0; g < generators_.size(); g++) {
        s[g] = static_cast<uint8_t>(error.symplectic(generators_[g]));
    }
    return s;
}

std::string StabilizerGroup::str() const {
    std::string s;
    for (const auto &g : generators_) {
        s += g.negative() ? g.str(true) : g.str();
        s += "\n";
    }
    return s;
}

namespace {

// Weight histogram of offset * <basis>, enumerated in Gray-code order.
std::vector<uint64_t> coset_weights(const PauliString &offset, const std::vector<PauliString> &basis) {
    const int n = offset.n();
    const int w = words_for(n);
    std::vector<uint64_t> cx = offset.xs();
    std::vector<uint64_t> cz = offset.zs();
    std::vector<uint64_t> counts(n + 1, 0);
    auto weight = [&]() {
        int s = 0;
        for (int k = 0; k < w; k++) {
            s += std::popcount(cx[k] | cz[k]);
        }
        return s;
    };
    counts[weight()]++;
    const uint64_t total = uint64_t{1} << basis.size();
    if (w == 1) {
        uint64_t x = cx[0];
        uint64_t z = cz[0];
        std::vector<uint64_t> bx(basis.size()), bz(basis.size());
        for (size_t b = 0; b < basis.size(); b++) {
            bx[b] = basis[b].xs()[0];
            bz[b] = basis[b].zs()[0];
        }
        for (uint64_t t = 1; t < total; t++) {
            int b = std::countr_zero(t);
            x ^= bx[b];
            z ^= bz[b];
            counts[std::popcount(x | z)]++;
        }
        return counts;
    }
    for (uint64_t t = 1; t < total; t++) {
        const PauliString &g = basis[std::countr_zero(t)];
        for (int k = 0; k < w; k++) {
            cx[k] ^= g.xs()[k];
            cz[k] ^= g.zs()[k];
        }
        counts[weight()]++;
    }
    return counts;
}

}  // namespace

std::vector<uint64_t> stabilizer_weight_counts(const StabilizerGroup &group, const EnumerationLimits &limits) {
    const int m = group.n() - group.k();
    if (m > limits.max_group_log2) {
        fail_resource("stabilizer enumeration: 2^" + std::to_string(m) + " group elements exceeds the limit 2^" +
                      std::to_string(limits.max_group_log2));
    }
    return coset_weights(PauliString(group.n()), group.generators());
}

CodeEnumerators code_enumerators(const StabilizerGroup &group, const EnumerationLimits &limits) {
    CodeEnumerators out;
    out.n = group.n();
    out.k = group.k();
    out.A = stabilizer_weight_counts(group, limits);
    if (out.n + out.k > limits.max_normalizer_log2) {
        fail_resource("normalizer enumeration: 2^" + std::to_string(out.n + out.k) +
                      " elements exceeds the limit 2^" + std::to_string(limits.max_normalizer_log2));
    }
    std::vector<PauliString> basis = group.normalizer_basis();
    if (static_cast<int>(basis.size()) != out.n + out.k) {
        throw InternalError("normalizer basis has " + std::to_string(basis.size()) + " elements, expected " +
                            std::to_string(out.n + out.k));
    }
    out.B = coset_weights(PauliString(out.n), basis);
    out.A_shadow = coset_weights(group.shadow_element(), basis);
    return out;
}

namespace {

EnumeratorVector normalized_counts(const std::vector<uint64_t> &counts, unsigned long log2_den, VectorKind kind) {
    std::vector<mpq_class> v;
    v.reserve(counts.size());
    mpz_class den = pow2(log2_den);
    for (uint64_t c : counts) {
        mpq_class q{mpz_class(std::to_string(c)), den};
        q.canonicalize();
        v.push_back(q);
    }
    return EnumeratorVector(kind, std::move(v));
}

}  // namespace

EnumeratorVector CodeEnumerators::sld() const {
    return normalized_counts(A, n, VectorKind::sld);
}

EnumeratorVector CodeEnumerators::dual_sld() const {
    return normalized_counts(B, n + k, VectorKind::dual_sld);
}

EnumeratorVector CodeEnumerators::tpd() const {
    return normalized_counts(A_shadow, n + k, VectorKind::tpd);
}

namespace {

// Dense matrix of a Pauli string under the basis convention of DenseState.
Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    const int n = p.n();
    const Eigen::Index d = Eigen::Index{1} << n;
    uint64_t xm = 0;
    uint64_t zm = 0;
    for (int q = 0; q < n; q++) {
        uint64_t bit = uint64_t{1} << (n - 1 - q);
        if (p.x(q)) xm |= bit;
        if (p.z(q)) zm |= bit;
    }
    static const cplx kPhase[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    cplx global = kPhase[std::popcount(xm & zm) & 3] * (p.negative() ? -1.0 : 1.0);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index b = 0; b < d; b++) {
        // X^x Z^z |b> = (-1)^(z.b) |b ^ x>
        double sign = (std::popcount(zm & static_cast<uint64_t>(b)) & 1) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(static_cast<uint64_t>(b) ^ xm), b) = global * sign;
    }
    return m;
}

}  // namespace

DenseState dense_from_group(const StabilizerGroup &group) {
    const int n = group.n();
    require_dense_n(n, "dense_from_group");
    const Eigen::Index d = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(d, d);
    for (const auto &g : group.generators()) {
        rho = rho * (Eigen::MatrixXcd::Identity(d, d) + pauli_matrix(g));
    }
    rho /= static_cast<double>(d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DenseState(n, rho);
}

DenseState dense_from_circuit(const Circuit &circuit) {
    const int n = circuit.n();
    require_dense_n(n, "dense_from_circuit");
    const size_t d = size_t{1} << n;
    std::vector<cplx> psi(d, 0.0);
    psi[0] = 1.0;
    const double r = 1.0 / std::sqrt(2.0);
    auto bit = [n](int q) { return size_t{1} << (n - 1 - q); };
    for (const Gate &g : circuit.gates()) {
        const size_t b0 = bit(g.q0);
        switch (g.kind) {
            case GateKind::I:
                break;
            case GateKind::X:
                for (size_t i = 0; i < d; i++)
                    if (!(i & b0)) std::swap(psi[i], psi[i | b0]);
                break;
            case GateKind::Y:
                for (size_t i = 0; i < d; i++)
                    if (!(i & b0)) {
                        cplx a = psi[i], b = psi[i | b0];
                        psi[i] = cplx(0, -1) * b;
                        psi[i | b0] = cplx(0, 1) * a;
                    }
                break;
            case GateKind::Z:
                for (size_t i = 0; i < d; i++)
                    if (i & b0) psi[i] = -psi[i];
                break;
            case GateKind::H:
                for (size_t i = 0; i < d; i++)
                    if (!(i & b0)) {
                        cplx a = psi[i], b = psi[i | b0];
                        psi[i] = r * (a + b);
                        psi[i | b0] = r * (a - b);
                    }
                break;
            case GateKind::S:
            case GateKind::S_DAG: {
                cplx ph = g.kind == GateKind::S ? cplx(0, 1) : cplx(0, -1);
                for (size_t i = 0; i < d; i++)
                    if (i & b0) psi[i] *= ph;
                break;
            }
            case GateKind::CNOT: {
                const size_t b1 = bit(g.q1);
                for (size_t i = 0; i < d; i++)
                    if ((i & b0) && !(i & b1)) std::swap(psi[i], psi[i | b1]);
                break;
            }
            case GateKind::CZ: {
                const size_t b1 = bit(g.q1);
                for (size_t i = 0; i < d; i++)
                    if ((i & b0) && (i & b1)) psi[i] = -psi[i];
                break;
            }
        }
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
    for (size_t i = 0; i < d; i++) {
        v[static_cast<Eigen::Index>(i)] = psi[i];
    }
    return DenseState::from_vector(n, v);
}

// ---------------------------------------------------------------------------
// Families.

namespace {

constexpr std::string_view kFamilyNames[] = {
    "product_zero", "bell_pairs", "ghz", "line_graph", "cycle_graph", "dicke", "ame6", "superposition", "mixture",
    "two_design_average", "maximally_mixed",
};

std::string normalize_name(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return c == '-' ? '_' : std::tolower(c); });
    return s;
}

std::vector<mpq_class> binomial_over_pow2(int n) {
    std::vector<mpz_class> row = binomial_row(n);
    mpz_class den = pow2(n);
    std::vector<mpq_class> v;
    for (const auto &c : row) {
        mpq_class q(c, den);
        q.canonicalize();
        v.push_back(q);
    }
    return v;
}

StabilizerGroup graph_state_group(int n, const std::vector<std::pair<int, int>> &edges) {
    std::vector<PauliString> gens;
    for (int v = 0; v < n; v++) {
        PauliString p(n);
        p.set(v, 1);
        gens.push_back(std::move(p));
    }
    for (auto [a, b] : edges) {
        gens[a].set(b, 3);
        gens[b].set(a, 3);
    }
    return StabilizerGroup(n, std::move(gens));
}

std::vector<std::pair<int, int>> line_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int v = 0; v + 1 < n; v++) {
        e.emplace_back(v, v + 1);
    }
    return e;
}

std::vector<std::pair<int, int>> cycle_edges(int e) {
    std::vector<std::pair<int, int>> edges;
    if (e >= 3) {
        for (int s = 0; s < e; s++) {
            edges.emplace_back(s, (s + 1) % e);
        }
    }
    return edges;
}

StabilizerGroup ghz_group(int n, int e) {
    std::vector<PauliString> gens;
    if (e >= 1) {
        PauliString xs(n);
        for (int q = 0; q < e; q++) xs.set(q, 1);
        gens.push_back(std::move(xs));
        for (int q = 0; q + 1 < e; q++) {
            PauliString zz(n);
            zz.set(q, 3);
            zz.set(q + 1, 3);
            gens.push_back(std::move(zz));
        }
    }
    for (int q = std::max(e, 0); q < n; q++) {
        gens.push_back(PauliString::single(n, q, 3));
    }
    return StabilizerGroup(n, std::move(gens));
}

StabilizerGroup bell_pairs_group(int n) {
    std::vector<PauliString> gens;
    for (int q = 0; q + 1 < n; q += 2) {
        PauliString xx(n), zz(n);
        xx.set(q, 1);
        xx.set(q + 1, 1);
        zz.set(q, 3);
        zz.set(q + 1, 3);
        gens.push_back(std::move(xx));
        gens.push_back(std::move(zz));
    }
    return StabilizerGroup(n, std::move(gens));
}

StabilizerGroup group_from_circuit(const Circuit &c) {
    Tableau t(c.n());
    t.apply(c);
    return StabilizerGroup(c.n(), t.stabilizers());
}

EnumeratorVector sld_from_counts(const std::vector<uint64_t> &counts, int n) {
    std::vector<mpq_class> v;
    mpz_class den = pow2(n);
    for (uint64_t c : counts) {
        mpq_class q{mpz_class(std::to_string(c)), den};
        q.canonicalize();
        v.push_back(q);
    }
    return EnumeratorVector(VectorKind::sld, std::move(v));
}

EnumeratorVector sld_of_group(const StabilizerGroup &g) {
    return sld_from_counts(stabilizer_weight_counts(g), g.n());
}

EnumeratorVector product_sld(int n) {
    return EnumeratorVector(VectorKind::sld, binomial_over_pow2(n));
}

EnumeratorVector pad_with_product(const EnumeratorVector &core, int extra) {
    if (extra <= 0) {
        return core;
    }
    return sld_tensor(core, product_sld(extra));
}

}  // namespace

std::string_view family_name(FamilyTag tag) {
    return kFamilyNames[static_cast<int>(tag)];
}

StateFamily StateFamily::make(FamilyTag tag, int n, int e, mpq_class p) {
    StateFamily f;
    f.tag = tag;
    f.n = n;
    f.p = std::move(p);
    if (e < 0) {
        switch (tag) {
            case FamilyTag::ghz:
            case FamilyTag::cycle_graph:
                e = n;
                break;
            case FamilyTag::dicke:
                e = n / 2;
                break;
            default:
                e = 0;
        }
    }
    f.e = e;
    f.validate();
    return f;
}

StateFamily StateFamily::parse(std::string_view name, int n, int e, const mpq_class &p) {
    std::string s = normalize_name(name);
    if (s == "product" || s == "product_zero" || s == "zero") return make(FamilyTag::product_zero, n, e, p);
    if (s == "bell_pairs" || s == "bell") return make(FamilyTag::bell_pairs, n, e, p);
    if (s == "ghz") return make(FamilyTag::ghz, n, e, p);
    if (s == "line" || s == "line_graph" || s == "cluster") return make(FamilyTag::line_graph, n, e, p);
    if (s == "cycle" || s == "cycle_graph") return make(FamilyTag::cycle_graph, n, e, p);
    if (s == "dicke") return make(FamilyTag::dicke, n, e, p);
    if (s == "dicke_half") return make(FamilyTag::dicke, n, n / 2, p);
    if (s == "w") return make(FamilyTag::dicke, n, 1, p);
    if (s == "ame6" || s == "ame") return make(FamilyTag::ame6, n, e, p);
    if (s == "superposition" || s == "sup") return make(FamilyTag::superposition, n, e, p);
    if (s == "mixture" || s == "mix") return make(FamilyTag::mixture, n, e, p);
    if (s == "two_design" || s == "two_design_average" || s == "2design" || s == "haar")
        return make(FamilyTag::two_design_average, n, e, p);
    if (s == "maximally_mixed" || s == "mixed") return make(FamilyTag::maximally_mixed, n, e, p);
    fail_contract("unknown state family '" + std::string(name) + "'");
}

void StateFamily::validate() const {
    if (n < 1) {
        fail_contract("state family " + std::string(family_name(tag)) + ": n must be at least 1");
    }
    if (e < 0 || e > n) {
        fail_contract("state family " + std::string(family_name(tag)) + ": parameter e = " + std::to_string(e) +
                      " outside [0, " + std::to_string(n) + "]");
    }
    if (p < 0 || p > 1) {
        fail_contract("state family " + std::string(family_name(tag)) + ": parameter p outside [0, 1]");
    }
    if (tag == FamilyTag::bell_pairs && n % 2 != 0) {
        fail_contract("bell_pairs needs an even number of qubits");
    }
    if (tag == FamilyTag::ame6 && n != 6) {
        fail_contract("ame6 is defined for n = 6 only");
    }
}

bool StateFamily::is_stabilizer() const {
    switch (tag) {
        case FamilyTag::product_zero:
        case FamilyTag::bell_pairs:
        case FamilyTag::ghz:
        case FamilyTag::line_graph:
        case FamilyTag::cycle_graph:
        case FamilyTag::ame6:
            return true;
        default:
            return false;
    }
}

std::string StateFamily::descriptor() const {
    std::string s(family_name(tag));
    if (tag == FamilyTag::ghz || tag == FamilyTag::cycle_graph || tag == FamilyTag::dicke) {
        s += "(e=" + std::to_string(e) + ")";
    }
    if (tag == FamilyTag::superposition || tag == FamilyTag::mixture) {
        s += "(p=" + p.get_str() + ")";
    }
    return s + ",n=" + std::to_string(n);
}

EnumeratorVector sld_tensor(const EnumeratorVector &a, const EnumeratorVector &b) {
    require_kind(a, VectorKind::sld, "sld_tensor");
    require_kind(b, VectorKind::sld, "sld_tensor");
    const int n = a.n() + b.n();
    if (a.is_exact() && b.is_exact()) {
        std::vector<mpq_class> out(n + 1, mpq_class(0));
        for (int i = 0; i <= a.n(); i++) {
            for (int j = 0; j <= b.n(); j++) {
                out[i + j] += a.exact_values()[i] * b.exact_values()[j];
            }
        }
        return EnumeratorVector(VectorKind::sld, std::move(out));
    }
    std::vector<double> out(n + 1, 0.0);
    for (int i = 0; i <= a.n(); i++) {
        for (int j = 0; j <= b.n(); j++) {
            out[i + j] += a[i] * b[j];
        }
    }
    return EnumeratorVector(VectorKind::sld, std::move(out));
}

EnumeratorVector family_enumerators(const StateFamily &f) {
    f.validate();
    const int n = f.n;
    switch (f.tag) {
        case FamilyTag::product_zero:
            return product_sld(n);
        case FamilyTag::bell_pairs: {
            if (n <= 24) {
                return sld_of_group(bell_pairs_group(n));
            }
            EnumeratorVector pair(VectorKind::sld, std::vector<mpq_class>{mpq_class(1, 4), 0, mpq_class(3, 4)});
            EnumeratorVector acc = pair;
            for (int k = 1; k < n / 2; k++) {
                acc = sld_tensor(acc, pair);
            }
            return acc;
        }
        case FamilyTag::ghz: {
            const int e = f.e;
            if (e == 0) {
                return product_sld(n);
            }
            std::vector<mpz_class> row = binomial_row(e);
            mpz_class den = pow2(e);
            std::vector<mpq_class> core(e + 1);
            for (int i = 0; i <= e; i++) {
                core[i] = (i % 2 == 0) ? mpq_class(row[i], den) : mpq_class(0);
                core[i].canonicalize();
            }
            core[e] += mpq_class(1, 2);
            return pad_with_product(EnumeratorVector(VectorKind::sld, std::move(core)), n - e);
        }
        case FamilyTag::line_graph:
            return sld_of_group(graph_state_group(n, line_edges(n)));
        case FamilyTag::cycle_graph: {
            const int e = f.e;
            if (e == 0) {
                return product_sld(n);
            }
            EnumeratorVector core = sld_of_group(graph_state_group(e, cycle_edges(e)));
            return pad_with_product(core, n - e);
        }
        case FamilyTag::dicke: {
            const int e = f.e;
            std::vector<mpz_class> cn = binomial_row(n);
            std::vector<mpq_class> ap(n + 1);
            for (int i = 0; i <= n; i++) {
                mpq_class s = 0;
                for (int j = 0; j <= std::min(i, e); j++) {
                    mpq_class t(binomial(i, j) * binomial(n - i, e - j), cn[e]);
                    t.canonicalize();
                    s += t * t;
                }
                ap[i] = s;
            }
            return EnumeratorVector(VectorKind::apd, std::move(ap));
        }
        case FamilyTag::ame6:
            return sld_of_group(group_from_circuit(ame6_circuit()));
        case FamilyTag::superposition:
        case FamilyTag::mixture: {
            mpq_class marginal = 1 - 2 * f.p * (1 - f.p);
            std::vector<mpq_class> ap(n + 1, marginal);
            ap[0] = 1;
            if (f.tag == FamilyTag::superposition) {
                ap[n] = 1;
            }
            return convert(EnumeratorVector(VectorKind::apd, std::move(ap)), VectorKind::sld);
        }
        case FamilyTag::two_design_average: {
            std::vector<mpz_class> row = binomial_row(n);
            mpz_class two_n = pow2(n);
            mpz_class den = two_n * (two_n + 1);
            std::vector<mpq_class> a(n + 1);
            a[0] = mpq_class(1, two_n);
            a[0].canonicalize();
            mpz_class three = 1;
            for (int i = 1; i <= n; i++) {
                three *= 3;
                a[i] = mpq_class(three * row[i], den);
                a[i].canonicalize();
            }
            return EnumeratorVector(VectorKind::sld, std::move(a));
        }
        case FamilyTag::maximally_mixed: {
            std::vector<mpz_class> row = binomial_row(n);
            mpz_class den = pow2(2 * n);
            std::vector<mpq_class> t(n + 1);
            mpz_class three = 1;
            for (int i = 0; i <= n; i++) {
                t[i] = mpq_class(three * row[i], den);
                t[i].canonicalize();
                three *= 3;
            }
            return EnumeratorVector(VectorKind::tpd, std::move(t));
        }
    }
    fail_contract("unknown state family");
}

EnumeratorVector family_sld(const StateFamily &family) {
    return convert(family_enumerators(family), VectorKind::sld);
}

Circuit ame6_circuit() {
    // Found by search over Clifford circuits with seven CNOTs; the output is
    // 3-uniform (every non-identity stabilizer has weight >= 4).
    Circuit c(6);
    c.h(1).h(5);
    c.cnot(1, 2);
    c.h(3);
    c.cnot(3, 0);
    c.h(1).s(1);
    c.cnot(3, 1);
    c.h(1).s(1).h(1);
    c.h(5).s(5);
    c.cnot(1, 5);
    c.h(4);
    c.cnot(4, 1);
    c.s(4);
    c.h(3).s(3).h(3);
    c.cnot(4, 3);
    c.s(0).h(0);
    c.h(1).s(1);
    c.cnot(0, 1);
    return c;
}

Circuit steane_encoder() {
    Circuit c(7);
    c.h(0).h(1).h(3);
    c.cnot(0, 2).cnot(0, 4).cnot(0, 6);
    c.cnot(1, 2).cnot(1, 5).cnot(1, 6);
    c.cnot(3, 4).cnot(3, 5).cnot(3, 6);
    return c;
}

Circuit family_circuit(const StateFamily &f) {
    f.validate();
    const int n = f.n;
    Circuit c(n);
    switch (f.tag) {
        case FamilyTag::product_zero:
            break;
        case FamilyTag::bell_pairs:
            for (int q = 0; q + 1 < n; q += 2) {
                c.h(q).cnot(q, q + 1);
            }
            break;
        case FamilyTag::ghz:
            if (f.e >= 1) {
                c.h(0);
                for (int q = 1; q < f.e; q++) {
                    c.cnot(q - 1, q);
                }
            }
            break;
        case FamilyTag::line_graph:
            for (int q = 0; q < n; q++) c.h(q);
            for (auto [a, b] : line_edges(n)) c.cz(a, b);
            break;
        case FamilyTag::cycle_graph:
            for (int q = 0; q < n; q++) c.h(q);
            for (auto [a, b] : cycle_edges(f.e)) c.cz(a, b);
            break;
        case FamilyTag::ame6:
            return ame6_circuit();
        default:
            fail_contract("family " + std::string(family_name(f.tag)) + " has no Clifford preparation circuit");
    }
    return c;
}

FamilyState build_family_state(const StateFamily &f) {
    f.validate();
    const int n = f.n;
    switch (f.tag) {
        case FamilyTag::product_zero: {
            std::vector<PauliString> gens;
            for (int q = 0; q < n; q++) gens.push_back(PauliString::single(n, q, 3));
            return StabilizerGroup(n, std::move(gens));
        }
        case FamilyTag::bell_pairs:
            return bell_pairs_group(n);
        case FamilyTag::ghz:
            return ghz_group(n, f.e);
        case FamilyTag::line_graph:
            return graph_state_group(n, line_edges(n));
        case FamilyTag::cycle_graph:
            return graph_state_group(n, cycle_edges(f.e));
        case FamilyTag::ame6:
            return group_from_circuit(ame6_circuit());
        case FamilyTag::dicke: {
            require_dense_n(n, "build_family_state(dicke)");
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
            for (Eigen::Index b = 0; b < v.size(); b++) {
                if (std::popcount(static_cast<uint64_t>(b)) == f.e) v[b] = 1.0;
            }
            return DenseState::from_vector(n, v);
        }
        case FamilyTag::superposition: {
            require_dense_n(n, "build_family_state(superposition)");
            double p = to_double(f.p);
            Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
            v[0] = std::sqrt(p);
            v[v.size() - 1] = std::sqrt(1 - p);
            return DenseState::from_vector(n, v);
        }
        case FamilyTag::mixture: {
            require_dense_n(n, "build_family_state(mixture)");
            double p = to_double(f.p);
            const Eigen::Index d = Eigen::Index{1} << n;
            Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d, d);
            rho(0, 0) = p;
            rho(d - 1, d - 1) += 1 - p;
            return DenseState(n, rho);
        }
        case FamilyTag::maximally_mixed:
            return DenseState::maximally_mixed(n);
        case FamilyTag::two_design_average:
            fail_contract("two_design_average is an ensemble average and has no single state");
    }
    fail_contract("unknown state family");
}

}  // namespace qwe

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

#ifndef QWE_STATES_HPP
#define QWE_STATES_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qwe/circuit.hpp"
#include "qwe/enumerator.hpp"
#include "qwe/pauli.hpp"

namespace qwe {

/// Largest qubit count accepted for dense density matrices.
constexpr int kDenseQubitLimit = 12;

/// Dense n-qubit density matrix. Basis index bit (n-1-q) is qubit q, so qubit 0
/// is the leftmost tensor factor.
class DenseState {
 public:
    DenseState(int n, Eigen::MatrixXcd rho, bool validate = true);
    static DenseState from_vector(int n, const Eigen::VectorXcd &psi);
    static DenseState maximally_mixed(int n);

    int n() const { return n_; }
    int dim() const { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd &matrix() const { return rho_; }
    double purity() const;

 private:
    int n_;
    Eigen::MatrixXcd rho_;
};

EnumeratorVector sld_from_dense(const DenseState &state);
EnumeratorVector apd_from_dense(const DenseState &state);
EnumeratorVector tpd_from_dense(const DenseState &state);
/// Y^n rho^T Y^n.
DenseState spin_flip(const DenseState &state);

/// Abelian Pauli group given by n - k independent, pairwise commuting generators.
class StabilizerGroup {
 public:
    StabilizerGroup(int n, std::vector<PauliString> generators);
    /// One generator per line, e.g. "XXXXIII" or "-ZZI"; '#' comments allowed.
    static StabilizerGroup parse(std::string_view text);
    static StabilizerGroup steane();

    int n() const { return n_; }
    int k() const { return n_ - static_cast<int>(generators_.size()); }
    const std::vector<PauliString> &generators() const { return generators_; }

    /// Basis of the normalizer (all Paulis commuting with every generator); n + k elements.
    std::vector<PauliString> normalizer_basis() const;
    /// A Pauli P with <P, S_g> = wt(S_g) mod 2 for every generator.
    PauliString shadow_element() const;
    /// Syndrome bits <E, S_g>.
    std::vector<uint8_t> syndrome(const PauliString &error) const;

    std::string str() const;

 private:
    int n_;
    std::vector<PauliString> generators_;
};

struct EnumerationLimits {
    /// Maximum n - k for enumerating the group itself.
    int max_group_log2 = 30;
    /// Maximum n + k for enumerating the normalizer and the shadow coset.
    int max_normalizer_log2 = 26;
};

/// Unnormalized weight counts of the stabilizer group, the normalizer, and the shadow.
struct CodeEnumerators {
    int n = 0;
    int k = 0;
    std::vector<uint64_t> A;
    std::vector<uint64_t> B;
    std::vector<uint64_t> A_shadow;

    /// A / 2^n.
    EnumeratorVector sld() const;
    /// B / 2^(n+k).
    EnumeratorVector dual_sld() const;
    /// A_shadow / 2^(n+k).
    EnumeratorVector tpd() const;
};

CodeEnumerators code_enumerators(const StabilizerGroup &group, const EnumerationLimits &limits = {});
/// Only the A counts (no normalizer enumeration), for states with large n.
std::vector<uint64_t> stabilizer_weight_counts(const StabilizerGroup &group, const EnumerationLimits &limits = {});

/// rho = 2^-n prod_g (I + S_g), the normalized projector onto the code space.
DenseState dense_from_group(const StabilizerGroup &group);
/// Statevector simulation of a Clifford circuit applied to |0..0>.
DenseState dense_from_circuit(const Circuit &circuit);

enum class FamilyTag {
    product_zero,
    bell_pairs,
    ghz,
    line_graph,
    cycle_graph,
    dicke,
    ame6,
    superposition,
    mixture,
    two_design_average,
    maximally_mixed,
};

/// A named state family at fixed n. `e` is the integer parameter of ghz,
/// cycle_graph and dicke; `p` is the weight of superposition and mixture.
struct StateFamily {
    FamilyTag tag = FamilyTag::product_zero;
    int n = 1;
    int e = 0;
    mpq_class p = 0;

    static StateFamily make(FamilyTag tag, int n, int e = -1, mpq_class p = 0);
    /// Accepts names like "ghz", "dicke", "dicke-half", "w", "two-design", "cycle".
    /// A negative e selects the family default (n for ghz and cycle, n/2 for dicke-half).
    static StateFamily parse(std::string_view name, int n, int e = -1, const mpq_class &p = mpq_class(1, 2));

    void validate() const;
    bool is_stabilizer() const;
    std::string descriptor() const;
};

std::string_view family_name(FamilyTag tag);

/// Exact enumerator vector in the family's natural kind (see module notes).
EnumeratorVector family_enumerators(const StateFamily &family);
/// Exact SLD of the family, converting from its natural kind where needed.
EnumeratorVector family_sld(const StateFamily &family);
/// Convolution a_j = sum_i a_i b_(j-i).
EnumeratorVector sld_tensor(const EnumeratorVector &a, const EnumeratorVector &b);

using FamilyState = std::variant<DenseState, StabilizerGroup>;
FamilyState build_family_state(const StateFamily &family);
/// Preparation circuit for the Clifford families (product, Bell pairs, GHZ, graphs, AME-6).
Circuit family_circuit(const StateFamily &family);

/// Seven-CNOT Clifford circuit preparing a 3-uniform six-qubit state.
Circuit ame6_circuit();
/// Encoder for the Steane logical |0>.
Circuit steane_encoder();

}  // namespace qwe

#endif

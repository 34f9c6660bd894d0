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

#ifndef QWE_PAULI_HPP
#define QWE_PAULI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qwe {

/// Pauli string in binary symplectic form with an optional overall sign.
/// Letters are encoded 0 = I, 1 = X, 2 = Y, 3 = Z. Products via operator*=
/// track the symplectic vector only; the sign is left unchanged.
class PauliString {
 public:
    PauliString() = default;
    explicit PauliString(int n);
    /// Accepts an optional leading '+' or '-', then letters from {I, X, Y, Z, _}.
    static PauliString parse(std::string_view text);
    static PauliString single(int n, int qubit, int letter);

    int n() const { return n_; }
    bool negative() const { return negative_; }
    void set_negative(bool negative) { negative_ = negative; }

    bool x(int q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
    bool z(int q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
    int letter(int q) const;
    void set(int q, int letter);

    int weight() const;
    bool is_identity() const;
    std::string str(bool with_sign = false) const;

    PauliString &operator*=(const PauliString &other);
    bool operator==(const PauliString &other) const;

    /// Symplectic inner product <P, Q> in {0, 1}; 0 means the two commute.
    int symplectic(const PauliString &other) const;
    bool commutes(const PauliString &other) const { return symplectic(other) == 0; }

    const std::vector<uint64_t> &xs() const { return x_; }
    const std::vector<uint64_t> &zs() const { return z_; }
    std::vector<uint64_t> &xs() { return x_; }
    std::vector<uint64_t> &zs() { return z_; }

    /// Flattened 2n-bit vector (x bits then z bits).
    std::vector<uint8_t> bits() const;
    static PauliString from_bits(int n, const std::vector<uint8_t> &bits);

 private:
    int n_ = 0;
    bool negative_ = false;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
};

inline int words_for(int bits) {
    return (bits + 63) / 64;
}

/// Dense GF(2) row reduction helpers over rows of `cols` bits.
namespace gf2 {

using Row = std::vector<uint8_t>;

int rank(std::vector<Row> rows);
/// Basis of { v : row . v = 0 for every row }.
std::vector<Row> nullspace(std::vector<Row> rows, int cols);
/// Some v with row_g . v = rhs_g for every g, or nullopt if inconsistent.
std::optional<Row> solve(std::vector<Row> rows, std::vector<uint8_t> rhs, int cols);

}  // namespace gf2

}  // namespace qwe

#endif

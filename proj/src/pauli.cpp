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

#include "qwe/pauli.hpp"

#include <bit>

#include "qwe/errors.hpp"

namespace qwe {

PauliString::PauliString(int n) : n_(n), x_(words_for(n), 0), z_(words_for(n), 0) {
    if (n < 0) {
        fail_contract("PauliString: negative qubit count");
    }
}

PauliString PauliString::parse(std::string_view text) {
    bool negative = false;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        negative = text[0] == '-';
        text.remove_prefix(1);
    }
    PauliString p(static_cast<int>(text.size()));
    p.negative_ = negative;
    for (size_t q = 0; q < text.size(); q++) {
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.set(static_cast<int>(q), 1);
                break;
            case 'Y':
                p.set(static_cast<int>(q), 2);
                break;
            case 'Z':
                p.set(static_cast<int>(q), 3);
                break;
            default:
                fail_contract("invalid Pauli letter '" + std::string(1, text[q]) + "' at position " +
                              std::to_string(q));
        }
    }
    return p;
}

PauliString PauliString::single(int n, int qubit, int letter) {
    PauliString p(n);
    p.set(qubit, letter);
    return p;
}

int PauliString::letter(int q) const {
    bool xb = x(q);
    bool zb = z(q);
    if (xb && zb) {
        return 2;
    }
    return xb ? 1 : (zb ? 3 : 0);
}

void PauliString::set(int q, int letter) {
    if (q < 0 || q >= n_) {
        fail_contract("PauliString::set: qubit " + std::to_string(q) + " out of range");
    }
    uint64_t bit = 1ull << (q & 63);
    bool xb = letter == 1 || letter == 2;
    bool zb = letter == 2 || letter == 3;
    x_[q >> 6] = xb ? (x_[q >> 6] | bit) : (x_[q >> 6] & ~bit);
    z_[q >> 6] = zb ? (z_[q >> 6] | bit) : (z_[q >> 6] & ~bit);
}

int PauliString::weight() const {
    int w = 0;
    for (size_t k = 0; k < x_.size(); k++) {
        w += std::popcount(x_[k] | z_[k]);
    }
    return w;
}

bool PauliString::is_identity() const {
    return weight() == 0;
}

std::string PauliString::str(bool with_sign) const {
    static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    if (with_sign) {
        s.push_back(negative_ ? '-' : '+');
    }
    for (int q = 0; q < n_; q++) {
        s.push_back(kLetters[letter(q)]);
    }
    return s;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    if (other.n_ != n_) {
        fail_contract("PauliString product: length mismatch");
    }
    for (size_t k = 0; k < x_.size(); k++) {
        x_[k] ^= other.x_[k];
        z_[k] ^= other.z_[k];
    }
    return *this;
}

bool PauliString::operator==(const PauliString &other) const {
    return n_ == other.n_ && negative_ == other.negative_ && x_ == other.x_ && z_ == other.z_;
}

int PauliString::symplectic(const PauliString &other) const {
    if (other.n_ != n_) {
        fail_contract("symplectic product: length mismatch");
    }
    int parity = 0;
    for (size_t k = 0; k < x_.size(); k++) {
        parity ^= std::popcount((x_[k] & other.z_[k]) ^ (z_[k] & other.x_[k])) & 1;
    }
    return parity;
}

std::vector<uint8_t> PauliString::bits() const {
    std::vector<uint8_t> b(2 * static_cast<size_t>(n_));
    for (int q = 0; q < n_; q++) {
        b[q] = x(q);
        b[n_ + q] = z(q);
    }
    return b;
}

PauliString PauliString::from_bits(int n, const std::vector<uint8_t> &bits) {
    PauliString p(n);
    for (int q = 0; q < n; q++) {
        bool xb = bits[q] != 0;
        bool zb = bits[n + q] != 0;
        p.set(q, xb ? (zb ? 2 : 1) : (zb ? 3 : 0));
    }
    return p;
}

namespace gf2 {

namespace {

// Reduces rows in place to row echelon form; returns pivot columns.
std::vector<int> echelon(std::vector<Row> &rows, std::vector<uint8_t> *rhs, int cols) {
    std::vector<int> pivots;
    size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); c++) {
        size_t p = r;
        while (p < rows.size() && !rows[p][c]) {
            p++;
        }
        if (p == rows.size()) {
            continue;
        }
        std::swap(rows[p], rows[r]);
        if (rhs) {
            std::swap((*rhs)[p], (*rhs)[r]);
        }
        for (size_t i = 0; i < rows.size(); i++) {
            if (i != r && rows[i][c]) {
                for (int k = 0; k < cols; k++) {
                    rows[i][k] ^= rows[r][k];
                }
                if (rhs) {
                    (*rhs)[i] ^= (*rhs)[r];
                }
            }
        }
        pivots.push_back(c);
        r++;
    }
    return pivots;
}

}  // namespace

int rank(std::vector<Row> rows) {
    int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    return static_cast<int>(echelon(rows, nullptr, cols).size());
}

std::vector<Row> nullspace(std::vector<Row> rows, int cols) {
    std::vector<int> pivots = echelon(rows, nullptr, cols);
    std::vector<uint8_t> is_pivot(cols, 0);
    for (int c : pivots) {
        is_pivot[c] = 1;
    }
    std::vector<Row> basis;
    for (int f = 0; f < cols; f++) {
        if (is_pivot[f]) {
            continue;
        }
        Row v(cols, 0);
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); r++) {
            if (rows[r][f]) {
                v[pivots[r]] = 1;
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Row> solve(std::vector<Row> rows, std::vector<uint8_t> rhs, int cols) {
    std::vector<int> pivots = echelon(rows, &rhs, cols);
    for (size_t r = pivots.size(); r < rows.size(); r++) {
        if (rhs[r]) {
            return std::nullopt;
        }
    }
    Row v(cols, 0);
    for (size_t r = 0; r < pivots.size(); r++) {
        v[pivots[r]] = rhs[r];
    }
    return v;
}

}  // namespace gf2

}  // namespace qwe

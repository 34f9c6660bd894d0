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

#ifndef QWE_CIRCUIT_HPP
#define QWE_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qwe/pauli.hpp"

namespace qwe {

enum class GateKind { I, X, Y, Z, H, S, S_DAG, CNOT, CZ };

struct Gate {
    GateKind kind;
    int q0;
    int q1 = -1;

    bool two_qubit() const { return kind == GateKind::CNOT || kind == GateKind::CZ; }
};

std::string_view gate_name(GateKind kind);

/// Clifford circuit on n qubits.
///
/// Text form: one gate per line, e.g. "H 0", "CNOT 0 1", "CZ 2 3"; '#' starts
/// a comment; an optional "QUBITS n" line fixes the width. Recognized names:
/// I X Y Z H S S_DAG CNOT (CX) CZ. Any other gate name, including T or
/// rotations, is rejected as non-Clifford.
class Circuit {
 public:
    Circuit() = default;
    explicit Circuit(int n) : n_(n) {}

    static Circuit parse(std::string_view text);

    int n() const { return n_; }
    const std::vector<Gate> &gates() const { return gates_; }

    Circuit &add(GateKind kind, int q0, int q1 = -1);
    Circuit &h(int q) { return add(GateKind::H, q); }
    Circuit &s(int q) { return add(GateKind::S, q); }
    Circuit &x(int q) { return add(GateKind::X, q); }
    Circuit &cnot(int c, int t) { return add(GateKind::CNOT, c, t); }
    Circuit &cz(int a, int b) { return add(GateKind::CZ, a, b); }
    void append(const Circuit &other);

    int two_qubit_count() const;
    std::string str() const;

 private:
    int n_ = 0;
    std::vector<Gate> gates_;
};

/// Stabilizer tableau with destabilizers (Aaronson-Gottesman), starting in |0..0>.
class Tableau {
 public:
    explicit Tableau(int n);

    int n() const { return n_; }

    void apply(const Gate &gate);
    void apply(const Circuit &circuit, int offset = 0);
    void h(int q);
    void s(int q);
    void cnot(int c, int t);
    void cz(int a, int b);
    /// Pauli letter 0..3 applied to qubit q.
    void pauli(int q, int letter);

    /// Z-basis measurement; `coin` decides the outcome only if it is random.
    int measure_z(int q, bool coin);
    int measure_x(int q, bool coin);

    /// Current stabilizer generators with signs.
    std::vector<PauliString> stabilizers() const;

 private:
    int row_words() const { return w_; }
    uint64_t *xrow(int r) { return &x_[static_cast<size_t>(r) * w_]; }
    uint64_t *zrow(int r) { return &z_[static_cast<size_t>(r) * w_]; }
    const uint64_t *xrow(int r) const { return &x_[static_cast<size_t>(r) * w_]; }
    const uint64_t *zrow(int r) const { return &z_[static_cast<size_t>(r) * w_]; }
    bool xbit(int r, int q) const { return (x_[static_cast<size_t>(r) * w_ + (q >> 6)] >> (q & 63)) & 1; }
    /// Row h <- row i * row h, with phase bookkeeping.
    void rowmult(int h, int i);
    void rowcopy(int dst, int src);
    void rowclear(int r);

    int n_;
    int w_;
    std::vector<uint64_t> x_;
    std::vector<uint64_t> z_;
    std::vector<uint8_t> r_;
};

}  // namespace qwe

#endif

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

#include "qwe/circuit.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "qwe/errors.hpp"

namespace qwe {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::I: return "I";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::S_DAG: return "S_DAG";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
    }
    return "?";
}

Circuit &Circuit::add(GateKind kind, int q0, int q1) {
    Gate g{kind, q0, q1};
    bool two = g.two_qubit();
    if (q0 < 0 || (two && (q1 < 0 || q1 == q0)) || (!two && q1 != -1)) {
        fail_contract("invalid qubit operands for gate " + std::string(gate_name(kind)));
    }
    n_ = std::max(n_, std::max(q0, q1) + 1);
    gates_.push_back(g);
    return *this;
}

void Circuit::append(const Circuit &other) {
    for (const Gate &g : other.gates_) {
        add(g.kind, g.q0, g.q1);
    }
    n_ = std::max(n_, other.n_);
}

int Circuit::two_qubit_count() const {
    return static_cast<int>(std::count_if(gates_.begin(), gates_.end(), [](const Gate &g) { return g.two_qubit(); }));
}

std::string Circuit::str() const {
    std::ostringstream out;
    out << "QUBITS " << n_ << "\n";
    for (const Gate &g : gates_) {
        out << gate_name(g.kind) << " " << g.q0;
        if (g.two_qubit()) {
            out << " " << g.q1;
        }
        out << "\n";
    }
    return out.str();
}

Circuit Circuit::parse(std::string_view text) {
    Circuit c;
    int declared = -1;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ls(line);
        std::string name;
        if (!(ls >> name)) {
            continue;
        }
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
        std::vector<int> args;
        std::string tok;
        while (ls >> tok) {
            try {
                size_t used = 0;
                int v = std::stoi(tok, &used);
                if (used != tok.size()) {
                    throw std::invalid_argument(tok);
                }
                args.push_back(v);
            } catch (const std::exception &) {
                fail_contract("circuit line " + std::to_string(line_no) + ": bad qubit index '" + tok + "'");
            }
        }
        auto need = [&](size_t k) {
            if (args.size() != k) {
                fail_contract("circuit line " + std::to_string(line_no) + ": " + name + " takes " + std::to_string(k) +
                              " operand(s)");
            }
        };
        if (name == "QUBITS") {
            need(1);
            declared = args[0];
            continue;
        }
        GateKind kind;
        if (name == "I") kind = GateKind::I;
        else if (name == "X") kind = GateKind::X;
        else if (name == "Y") kind = GateKind::Y;
        else if (name == "Z") kind = GateKind::Z;
        else if (name == "H") kind = GateKind::H;
        else if (name == "S") kind = GateKind::S;
        else if (name == "S_DAG" || name == "SDG") kind = GateKind::S_DAG;
        else if (name == "CNOT" || name == "CX") kind = GateKind::CNOT;
        else if (name == "CZ") kind = GateKind::CZ;
        else {
            fail_contract("circuit line " + std::to_string(line_no) + ": non-Clifford or unknown gate '" + name + "'");
        }
        Gate probe{kind, 0};
        need(probe.two_qubit() || kind == GateKind::CNOT || kind == GateKind::CZ ? 2 : 1);
        c.add(kind, args[0], args.size() > 1 ? args[1] : -1);
    }
    if (declared >= 0) {
        if (declared < c.n_) {
            fail_contract("circuit declares " + std::to_string(declared) + " qubits but uses qubit " +
                          std::to_string(c.n_ - 1));
        }
        c.n_ = declared;
    }
    return c;
}

Tableau::Tableau(int n) : n_(n), w_(words_for(n)) {
    if (n < 1) {
        fail_contract("Tableau: need at least one qubit");
    }
    size_t rows = 2 * static_cast<size_t>(n) + 1;
    x_.assign(rows * w_, 0);
    z_.assign(rows * w_, 0);
    r_.assign(rows, 0);
    for (int q = 0; q < n; q++) {
        xrow(q)[q >> 6] |= 1ull << (q & 63);
        zrow(n + q)[q >> 6] |= 1ull << (q & 63);
    }
}

void Tableau::h(int q) {
    const int w = q >> 6;
    const uint64_t m = 1ull << (q & 63);
    for (int r = 0; r < 2 * n_; r++) {
        uint64_t &xw = x_[static_cast<size_t>(r) * w_ + w];
        uint64_t &zw = z_[static_cast<size_t>(r) * w_ + w];
        bool xb = xw & m;
        bool zb = zw & m;
        r_[r] ^= xb & zb;
        if (xb != zb) {
            xw ^= m;
            zw ^= m;
        }
    }
}

void Tableau::s(int q) {
    const int w = q >> 6;
    const uint64_t m = 1ull << (q & 63);
    for (int r = 0; r < 2 * n_; r++) {
        uint64_t &xw = x_[static_cast<size_t>(r) * w_ + w];
        uint64_t &zw = z_[static_cast<size_t>(r) * w_ + w];
        bool xb = xw & m;
        bool zb = zw & m;
        r_[r] ^= xb & zb;
        if (xb) {
            zw ^= m;
        }
    }
}

void Tableau::cnot(int c, int t) {
    const int wc = c >> 6;
    const int wt = t >> 6;
    const uint64_t mc = 1ull << (c & 63);
    const uint64_t mt = 1ull << (t & 63);
    for (int r = 0; r < 2 * n_; r++) {
        uint64_t *xr = xrow(r);
        uint64_t *zr = zrow(r);
        bool xa = xr[wc] & mc;
        bool za = zr[wc] & mc;
        bool xb = xr[wt] & mt;
        bool zb = zr[wt] & mt;
        r_[r] ^= xa & zb & (xb ^ za ^ 1);
        if (xa) {
            xr[wt] ^= mt;
        }
        if (zb) {
            zr[wc] ^= mc;
        }
    }
}

void Tableau::cz(int a, int b) {
    h(b);
    cnot(a, b);
    h(b);
}

void Tableau::pauli(int q, int letter) {
    if (letter == 0) {
        return;
    }
    const int w = q >> 6;
    const uint64_t m = 1ull << (q & 63);
    for (int r = 0; r < 2 * n_; r++) {
        bool xb = x_[static_cast<size_t>(r) * w_ + w] & m;
        bool zb = z_[static_cast<size_t>(r) * w_ + w] & m;
        // X flips rows containing Z or Y; Z flips rows containing X or Y; Y flips X or Z.
        bool flip = letter == 1 ? zb : (letter == 3 ? xb : (xb ^ zb));
        r_[r] ^= flip;
    }
}

void Tableau::apply(const Gate &g) {
    int hi = std::max(g.q0, g.q1);
    if (hi >= n_) {
        fail_contract("gate acts on qubit " + std::to_string(hi) + " outside a " + std::to_string(n_) +
                      "-qubit tableau");
    }
    switch (g.kind) {
        case GateKind::I: break;
        case GateKind::X: pauli(g.q0, 1); break;
        case GateKind::Y: pauli(g.q0, 2); break;
        case GateKind::Z: pauli(g.q0, 3); break;
        case GateKind::H: h(g.q0); break;
        case GateKind::S: s(g.q0); break;
        case GateKind::S_DAG:
            s(g.q0);
            s(g.q0);
            s(g.q0);
            break;
        case GateKind::CNOT: cnot(g.q0, g.q1); break;
        case GateKind::CZ: cz(g.q0, g.q1); break;
    }
}

void Tableau::apply(const Circuit &circuit, int offset) {
    for (const Gate &g : circuit.gates()) {
        Gate shifted{g.kind, g.q0 + offset, g.two_qubit() ? g.q1 + offset : -1};
        apply(shifted);
    }
}

void Tableau::rowmult(int h, int i) {
    uint64_t *xh = xrow(h);
    uint64_t *zh = zrow(h);
    const uint64_t *xi = xrow(i);
    const uint64_t *zi = zrow(i);
    int log_i = 2 * (r_[h] + r_[i]);
    for (int k = 0; k < w_; k++) {
        uint64_t x1 = xi[k], z1 = zi[k], x2 = xh[k], z2 = zh[k];
        uint64_t anti = (x1 & z2) ^ (z1 & x2);
        uint64_t minus = (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2) | (x1 & ~z1 & ~x2 & z2);
        log_i += std::popcount(anti) + 2 * std::popcount(minus);
        xh[k] = x1 ^ x2;
        zh[k] = z1 ^ z2;
    }
    r_[h] = (log_i & 3) >= 2;
}

void Tableau::rowcopy(int dst, int src) {
    std::copy_n(xrow(src), w_, xrow(dst));
    std::copy_n(zrow(src), w_, zrow(dst));
    r_[dst] = r_[src];
}

void Tableau::rowclear(int r) {
    std::fill_n(xrow(r), w_, 0);
    std::fill_n(zrow(r), w_, 0);
    r_[r] = 0;
}

int Tableau::measure_z(int q, bool coin) {
    if (q < 0 || q >= n_) {
        fail_contract("measure_z: qubit out of range");
    }
    int p = -1;
    for (int r = n_; r < 2 * n_; r++) {
        if (xbit(r, q)) {
            p = r;
            break;
        }
    }
    if (p >= 0) {
        for (int r = 0; r < 2 * n_; r++) {
            if (r != p && xbit(r, q)) {
                rowmult(r, p);
            }
        }
        rowcopy(p - n_, p);
        rowclear(p);
        zrow(p)[q >> 6] |= 1ull << (q & 63);
        r_[p] = coin ? 1 : 0;
        return r_[p];
    }
    const int scratch = 2 * n_;
    rowclear(scratch);
    for (int r = 0; r < n_; r++) {
        if (xbit(r, q)) {
            rowmult(scratch, r + n_);
        }
    }
    return r_[scratch];
}

int Tableau::measure_x(int q, bool coin) {
    h(q);
    int m = measure_z(q, coin);
    h(q);
    return m;
}

std::vector<PauliString> Tableau::stabilizers() const {
    std::vector<PauliString> out;
    for (int r = n_; r < 2 * n_; r++) {
        PauliString p(n_);
        for (int k = 0; k < w_; k++) {
            p.xs()[k] = xrow(r)[k];
            p.zs()[k] = zrow(r)[k];
        }
        p.set_negative(r_[r] != 0);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace qwe

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

#include "qwe/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "qwe/combinatorics.hpp"
#include "qwe/errors.hpp"
#include "qwe/rng.hpp"

namespace qwe {

const char *bell_symbol_name(uint8_t symbol) {
    static const char *kNames[4] = {"Phi+", "Psi+", "Phi-", "Psi-"};
    return symbol < 4 ? kNames[symbol] : "?";
}

int BellSampleSet::singlets(uint64_t s) const {
    const uint8_t *row = shot(s);
    int c = 0;
    for (int i = 0; i < n; i++) {
        c += row[i] == kPsiMinus;
    }
    return c;
}

std::vector<uint64_t> BellSampleSet::triplet_histogram() const {
    if (!per_shot()) {
        return histogram;
    }
    std::vector<uint64_t> h(n + 1, 0);
    for (uint64_t s = 0; s < shots; s++) {
        h[n - singlets(s)]++;
    }
    return h;
}

void BellSampleSet::validate() const {
    if (n < 1) {
        fail_contract("Bell sample set: n must be at least 1");
    }
    if (per_shot()) {
        if (symbols.size() != shots * static_cast<uint64_t>(n)) {
            fail_contract("Bell sample set: expected " + std::to_string(shots * n) + " symbols, found " +
                          std::to_string(symbols.size()));
        }
        for (size_t i = 0; i < symbols.size(); i++) {
            if (symbols[i] > 3) {
                fail_contract("Bell sample set: invalid symbol " + std::to_string(symbols[i]) + " at shot " +
                              std::to_string(i / n) + ", pair " + std::to_string(i % n));
            }
        }
    } else {
        if (histogram.size() != static_cast<size_t>(n) + 1) {
            fail_contract("Bell sample set: histogram needs n + 1 = " + std::to_string(n + 1) + " entries");
        }
        uint64_t total = 0;
        for (uint64_t c : histogram) total += c;
        if (total != shots) {
            fail_contract("Bell sample set: histogram sums to " + std::to_string(total) + ", not " +
                          std::to_string(shots));
        }
    }
}

BellSampleSet concatenate(const BellSampleSet &a, const BellSampleSet &b) {
    if (a.n != b.n || a.encoding != b.encoding) {
        fail_contract("cannot concatenate Bell sample sets with different n or encoding");
    }
    BellSampleSet out = a;
    out.shots = a.shots + b.shots;
    if (a.per_shot()) {
        out.symbols.insert(out.symbols.end(), b.symbols.begin(), b.symbols.end());
    } else {
        for (size_t i = 0; i < out.histogram.size(); i++) out.histogram[i] += b.histogram[i];
    }
    if (a.provenance != b.provenance) {
        out.provenance = a.provenance + " + " + b.provenance;
    }
    return out;
}

BellSampleSet sample_tpd(const EnumeratorVector &tpd, uint64_t shots, uint64_t seed) {
    require_kind(tpd, VectorKind::tpd, "sample_tpd");
    require_normalized_tpd(tpd);
    const int n = tpd.n();
    std::vector<double> cdf(n + 1);
    double acc = 0;
    for (int i = 0; i <= n; i++) {
        acc += std::max(tpd[i], 0.0);
        cdf[i] = acc;
    }
    for (double &c : cdf) c /= acc;
    cdf[n] = 1.0;
    BellSampleSet out;
    out.n = n;
    out.shots = shots;
    out.encoding = BellSampleSet::Encoding::histogram;
    out.seed = seed;
    out.provenance = "exact TPD";
    out.histogram.assign(n + 1, 0);
    StreamRng rng(seed, 0);
    for (uint64_t s = 0; s < shots; s++) {
        double u = rng.uniform();
        size_t i = std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
        out.histogram[std::min<size_t>(i, n)]++;
    }
    return out;
}

namespace {

// Measures the (unsigned) Pauli `p` placed at `offset` by rotating it onto a single Z.
int measure_pauli(Tableau &t, const PauliString &p, int offset, bool coin) {
    std::vector<Gate> basis;
    std::vector<Gate> links;
    int pivot = -1;
    for (int q = 0; q < p.n(); q++) {
        int letter = p.letter(q);
        if (letter == 0) continue;
        int Q = q + offset;
        if (letter == 2) basis.push_back({GateKind::S_DAG, Q});
        if (letter != 3) basis.push_back({GateKind::H, Q});
        if (pivot < 0) {
            pivot = Q;
        } else {
            links.push_back({GateKind::CNOT, Q, pivot});
        }
    }
    if (pivot < 0) {
        return 0;
    }
    for (const Gate &g : basis) t.apply(g);
    for (const Gate &g : links) t.apply(g);
    int m = t.measure_z(pivot, coin);
    for (auto it = links.rbegin(); it != links.rend(); ++it) t.apply(*it);
    for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::S_DAG) g.kind = GateKind::S;
        t.apply(g);
    }
    return m;
}

struct Frame {
    std::vector<uint8_t> x;
    std::vector<uint8_t> z;

    explicit Frame(int qubits) : x(qubits, 0), z(qubits, 0) {}

    void apply(GateKind kind, int a, int b) {
        switch (kind) {
            case GateKind::H:
                std::swap(x[a], z[a]);
                break;
            case GateKind::S:
            case GateKind::S_DAG:
                z[a] ^= x[a];
                break;
            case GateKind::CNOT:
                x[b] ^= x[a];
                z[a] ^= z[b];
                break;
            case GateKind::CZ:
                z[a] ^= x[b];
                z[b] ^= x[a];
                break;
            default:
                break;
        }
    }

    void pauli(int q, int letter) {
        x[q] ^= static_cast<uint8_t>(letter == 1 || letter == 2);
        z[q] ^= static_cast<uint8_t>(letter == 2 || letter == 3);
    }

    void pauli(const PauliString &p, int offset) {
        for (int q = 0; q < p.n(); q++) {
            x[q + offset] ^= static_cast<uint8_t>(p.x(q));
            z[q + offset] ^= static_cast<uint8_t>(p.z(q));
        }
    }
};

void depolarize1(Frame &f, int q, double rate, StreamRng &rng) {
    if (rate > 0 && rng.uniform() < rate) {
        f.pauli(q, 1 + static_cast<int>(rng.below(3)));
    }
}

void check_experiment(const BellExperiment &exp) {
    if (exp.n < 1) {
        fail_contract("Bell experiment needs at least one qubit per copy");
    }
    if (exp.prep_a.n() != exp.n || exp.prep_b.n() != exp.n) {
        fail_contract("preparation circuits must act on " + std::to_string(exp.n) + " qubits");
    }
    if (exp.code_space && exp.code_space->n() != exp.n) {
        fail_contract("code space width differs from the experiment width");
    }
    for (const auto &p : exp.twirl) {
        if (p.n() != exp.n) fail_contract("twirl Pauli width differs from the experiment width");
    }
}

}  // namespace

BellSampleSet simulate_bell_experiment(const BellExperiment &exp, const NoiseModel &noise, uint64_t shots,
                                       uint64_t seed, const SimulationOptions &options) {
    check_experiment(exp);
    noise.validate();
    const int n = exp.n;

    Tableau ref(2 * n);
    if (exp.code_space) {
        for (int copy = 0; copy < 2; copy++) {
            for (const auto &g : exp.code_space->generators()) {
                measure_pauli(ref, g, copy * n, false);
            }
        }
    }
    ref.apply(exp.prep_a, 0);
    ref.apply(exp.prep_b, n);
    for (int s = 0; s < n; s++) ref.cnot(s, n + s);
    for (int s = 0; s < n; s++) ref.h(s);

    BellSampleSet out;
    out.n = n;
    out.shots = shots;
    out.encoding = BellSampleSet::Encoding::per_shot;
    out.seed = seed;
    out.provenance = exp.provenance;
    out.symbols.assign(shots * static_cast<size_t>(n), 0);

    const double rate = noise.circuit_error_rate;
    auto run_range = [&](uint64_t begin, uint64_t end) {
        Frame frame(2 * n);
        for (uint64_t s = begin; s < end; s++) {
            StreamRng rng(seed, options.shot_offset + s);
            std::fill(frame.x.begin(), frame.x.end(), 0);
            std::fill(frame.z.begin(), frame.z.end(), 0);
            for (int copy = 0; copy < 2; copy++) {
                for (const auto &p : exp.twirl) {
                    if (rng.coin()) frame.pauli(p, copy * n);
                }
            }
            for (int copy = 0; copy < 2; copy++) {
                const Circuit &prep = copy == 0 ? exp.prep_a : exp.prep_b;
                const int off = copy * n;
                for (const Gate &g : prep.gates()) {
                    int a = g.q0 + off;
                    int b = g.two_qubit() ? g.q1 + off : -1;
                    frame.apply(g.kind, a, b);
                    depolarize1(frame, a, rate, rng);
                    if (b >= 0) depolarize1(frame, b, rate, rng);
                }
            }
            if (noise.p > 0) {
                for (int q = 0; q < 2 * n; q++) {
                    if (rng.uniform() < noise.p) frame.pauli(q, static_cast<int>(rng.below(4)));
                }
            }
            for (int q = 0; q < n; q++) {
                frame.apply(GateKind::CNOT, q, n + q);
                depolarize1(frame, q, rate, rng);
                depolarize1(frame, n + q, rate, rng);
            }
            Tableau t = ref;
            uint8_t *row = out.shot(s);
            for (int q = 0; q < n; q++) {
                int mx = t.measure_z(q, rng.coin()) ^ frame.z[q];
                row[q] = static_cast<uint8_t>(mx << 1);
            }
            for (int q = 0; q < n; q++) {
                int mz = t.measure_z(n + q, rng.coin()) ^ frame.x[n + q];
                row[q] |= static_cast<uint8_t>(mz);
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<uint64_t>(threads, std::max<uint64_t>(1, shots / 1024)));
    if (threads <= 1) {
        run_range(0, shots);
    } else {
        std::vector<std::thread> pool;
        uint64_t chunk = (shots + threads - 1) / threads;
        for (unsigned w = 0; w < threads; w++) {
            uint64_t b = std::min<uint64_t>(shots, w * chunk);
            uint64_t e = std::min<uint64_t>(shots, b + chunk);
            pool.emplace_back(run_range, b, e);
        }
        for (auto &th : pool) th.join();
    }
    return out;
}

BellSampleSet simulate_bell_circuit(const Circuit &prep, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                                    const SimulationOptions &options) {
    BellExperiment exp;
    exp.n = prep.n();
    exp.prep_a = prep;
    exp.prep_b = prep;
    exp.provenance = "circuit";
    return simulate_bell_experiment(exp, noise, shots, seed, options);
}

BellSampleSet simulate_two_setting(const Circuit &encoder, const PauliString &logical_x, const NoiseModel &noise,
                                   uint64_t shots, uint64_t seed, const SimulationOptions &options) {
    if (logical_x.n() != encoder.n()) {
        fail_contract("logical X width differs from the encoder width");
    }
    BellExperiment first;
    first.n = encoder.n();
    first.prep_a = encoder;
    first.prep_b = encoder;
    first.provenance = "two-setting";
    BellExperiment second = first;
    for (int q = 0; q < logical_x.n(); q++) {
        int letter = logical_x.letter(q);
        if (letter) second.prep_b.add(letter == 1 ? GateKind::X : letter == 2 ? GateKind::Y : GateKind::Z, q);
    }
    const uint64_t half = (shots + 1) / 2;
    SimulationOptions o1 = options;
    SimulationOptions o2 = options;
    o2.shot_offset = options.shot_offset + half;
    return concatenate(simulate_bell_experiment(first, noise, half, seed, o1),
                       simulate_bell_experiment(second, noise, shots - half, seed, o2));
}

BellSampleSet simulate_code(const StabilizerGroup &code, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                            const SimulationOptions &options) {
    BellExperiment exp;
    exp.n = code.n();
    exp.prep_a = Circuit(code.n());
    exp.prep_b = Circuit(code.n());
    exp.code_space = code;
    exp.twirl = code.normalizer_basis();
    exp.provenance = "code twirl";
    return simulate_bell_experiment(exp, noise, shots, seed, options);
}

BellSampleSet simulate_steane(const NoiseModel &noise, uint64_t shots, uint64_t seed,
                              const SimulationOptions &options) {
    auto out = simulate_two_setting(steane_encoder(), PauliString::parse("XXXXXXX"), noise, shots, seed, options);
    out.provenance = "steane two-setting";
    return out;
}

BellSampleSet sample_family(const StateFamily &family, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                            const SimulationOptions &options) {
    noise.validate();
    BellSampleSet out;
    if (family.is_stabilizer()) {
        out = simulate_bell_circuit(family_circuit(family), noise, shots, seed, options);
    } else {
        if (noise.circuit_error_rate > 0) {
            fail_contract("gate noise needs a Clifford preparation circuit; " + family.descriptor() + " has none");
        }
        out = sample_tpd(noisy_family_enumerators(family, mpq_class(noise.p)).tpd, shots, seed);
    }
    out.provenance = family.descriptor();
    return out;
}

void pauli_frame_update(uint8_t *shot_symbols, const PauliString &pauli) {
    for (int q = 0; q < pauli.n(); q++) {
        // X -> z-bit, Z -> x-bit
        shot_symbols[q] ^= static_cast<uint8_t>((pauli.z(q) ? 2 : 0) | (pauli.x(q) ? 1 : 0));
    }
}

namespace {

// Parity of S (x) S on one pair: X -> x-bit, Z -> z-bit, Y -> 1 + x + z.
inline int pair_parity(uint8_t sym, int letter) {
    int xb = sym >> 1;
    int zb = sym & 1;
    switch (letter) {
        case 1:
            return xb;
        case 2:
            return 1 ^ xb ^ zb;
        case 3:
            return zb;
        default:
            return 0;
    }
}

}  // namespace

std::vector<uint8_t> check_parities(const uint8_t *shot_symbols, int n, const StabilizerGroup &code) {
    if (n != code.n()) {
        fail_contract("check_parities: sample has " + std::to_string(n) + " pairs, code has " +
                      std::to_string(code.n()) + " qubits");
    }
    std::vector<uint8_t> out;
    out.reserve(code.generators().size());
    for (const auto &g : code.generators()) {
        int par = 0;
        for (int q = 0; q < n; q++) par ^= pair_parity(shot_symbols[q], g.letter(q));
        out.push_back(static_cast<uint8_t>(par));
    }
    return out;
}

uint64_t syndrome_bits(const uint8_t *shot_symbols, const StabilizerGroup &code) {
    if (code.generators().size() > 64) {
        fail_resource("syndrome_bits: more than 64 generators");
    }
    auto bits = check_parities(shot_symbols, code.n(), code);
    uint64_t s = 0;
    for (size_t g = 0; g < bits.size(); g++) s |= static_cast<uint64_t>(bits[g]) << g;
    return s;
}

LookupDecoder::LookupDecoder(StabilizerGroup code, int max_syndrome_bits) : code_(std::move(code)) {
    const int m = static_cast<int>(code_.generators().size());
    if (m > max_syndrome_bits) {
        fail_resource("lookup decoder: 2^" + std::to_string(m) + " syndromes exceed the limit 2^" +
                      std::to_string(max_syndrome_bits));
    }
    const int n = code_.n();
    const uint64_t size = uint64_t{1} << m;
    table_.assign(size, PauliString(n));
    filled_.assign(size, 0);
    filled_[0] = 1;
    uint64_t remaining = size - 1;

    auto syndrome_of = [&](const PauliString &e) {
        uint64_t s = 0;
        for (int g = 0; g < m; g++) s |= static_cast<uint64_t>(e.symplectic(code_.generators()[g])) << g;
        return s;
    };

    for (int w = 1; w <= n && remaining > 0; w++) {
        std::vector<int> subset(w);
        for (int i = 0; i < w; i++) subset[i] = i;
        while (true) {
            std::vector<int> letters(w, 1);
            while (true) {
                PauliString e(n);
                for (int i = 0; i < w; i++) e.set(subset[i], letters[i]);
                uint64_t s = syndrome_of(e);
                if (!filled_[s]) {
                    filled_[s] = 1;
                    table_[s] = e;
                    remaining--;
                }
                // Odometer with the lowest qubit most significant.
                int i = w - 1;
                while (i >= 0 && letters[i] == 3) letters[i--] = 1;
                if (i < 0) break;
                letters[i]++;
            }
            int i = w - 1;
            while (i >= 0 && subset[i] == n - w + i) i--;
            if (i < 0) break;
            subset[i]++;
            for (int j = i + 1; j < w; j++) subset[j] = subset[j - 1] + 1;
        }
    }
}

const PauliString &LookupDecoder::correction(uint64_t syndrome) const {
    if (syndrome >= table_.size() || !filled_[syndrome]) {
        throw InternalError("lookup decoder has no entry for syndrome " + std::to_string(syndrome));
    }
    return table_[syndrome];
}

BellSampleSet correct(const BellSampleSet &samples, const LookupDecoder &decoder) {
    if (!samples.per_shot()) {
        fail_contract("correction needs per-shot samples");
    }
    BellSampleSet out = samples;
    for (uint64_t s = 0; s < out.shots; s++) {
        uint8_t *row = out.shot(s);
        pauli_frame_update(row, decoder.correction(syndrome_bits(row, decoder.code())));
    }
    out.provenance = samples.provenance + " | corrected";
    return out;
}

PostselectResult postselect(const BellSampleSet &samples, const StabilizerGroup &code) {
    if (!samples.per_shot()) {
        fail_contract("postselection needs per-shot samples");
    }
    PostselectResult r;
    r.kept = samples;
    r.kept.symbols.clear();
    uint64_t kept = 0;
    for (uint64_t s = 0; s < samples.shots; s++) {
        auto bits = check_parities(samples.shot(s), samples.n, code);
        if (std::all_of(bits.begin(), bits.end(), [](uint8_t b) { return b == 0; })) {
            r.kept.symbols.insert(r.kept.symbols.end(), samples.shot(s), samples.shot(s) + samples.n);
            kept++;
        }
    }
    r.kept.shots = kept;
    r.kept.provenance = samples.provenance + " | postselected";
    r.retained_fraction = samples.shots ? static_cast<double>(kept) / static_cast<double>(samples.shots) : 0.0;
    return r;
}

}  // namespace qwe

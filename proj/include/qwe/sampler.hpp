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


#ifndef QWE_SAMPLER_HPP
#define QWE_SAMPLER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qwe/circuit.hpp"
#include "qwe/enumerator.hpp"
#include "qwe/noise.hpp"
#include "qwe/pauli.hpp"
#include "qwe/states.hpp"

namespace qwe {

/// Bell symbol per qubit pair, encoded as (x-bit << 1) | z-bit where the
/// x-bit is the X(x)X eigenvalue and the z-bit the Z(x)Z eigenvalue (+1 -> 0).
enum BellSymbol : uint8_t { kPhiPlus = 0, kPsiPlus = 1, kPhiMinus = 2, kPsiMinus = 3 };

const char *bell_symbol_name(uint8_t symbol);

/// Outcomes of a two-copy Bell-sampling run: either one symbol per pair and
/// shot, or only the triplet-count histogram.
struct BellSampleSet {
    enum class Encoding { per_shot, histogram };

    int n = 0;
    uint64_t shots = 0;
    Encoding encoding = Encoding::per_shot;
    uint64_t seed = 0;
    std::string provenance;
    /// Free-form JSON text carried through files (tool version, config echo).
    std::string metadata;
    /// per_shot: shots * n symbols, shot-major.
    std::vector<uint8_t> symbols;
    /// histogram: n + 1 counts indexed by triplet count.
    std::vector<uint64_t> histogram;

    bool per_shot() const { return encoding == Encoding::per_shot; }
    const uint8_t *shot(uint64_t s) const { return &symbols[s * static_cast<size_t>(n)]; }
    uint8_t *shot(uint64_t s) { return &symbols[s * static_cast<size_t>(n)]; }
    int singlets(uint64_t s) const;

    /// Triplet-count histogram for either encoding.
    std::vector<uint64_t> triplet_histogram() const;
    void validate() const;
};

/// Shots of `a` followed by shots of `b`; both must share n and encoding.
BellSampleSet concatenate(const BellSampleSet &a, const BellSampleSet &b);

/// Multinomial draw of triplet counts from a normalized TPD (histogram encoding).
BellSampleSet sample_tpd(const EnumeratorVector &tpd, uint64_t shots, uint64_t seed);

/// One two-copy Bell-sampling setup. Each copy starts in |0..0>, is optionally
/// projected (noiselessly) into a code space, receives a uniformly random
/// product of the `twirl` Paulis (noiseless, independently per copy and shot),
/// then runs its preparation circuit with gate noise.
struct BellExperiment {
    int n = 0;
    Circuit prep_a;
    Circuit prep_b;
    std::optional<StabilizerGroup> code_space;
    std::vector<PauliString> twirl;
    std::string provenance;
};

struct SimulationOptions {
    /// 0 selects std::thread::hardware_concurrency().
    unsigned threads = 0;
    /// Global index of the first shot; per-shot RNG streams are keyed by it.
    uint64_t shot_offset = 0;
};

/// Runs the experiment: depolarizing error after every gate (rate
/// noise.circuit_error_rate on each touched qubit), E_p on every qubit after
/// preparation, transversal CNOT(s -> n + s) with gate noise, then X readout of
/// the controls and Z readout of the targets. Deterministic in (seed, shot index)
/// regardless of thread count.
BellSampleSet simulate_bell_experiment(const BellExperiment &exp, const NoiseModel &noise, uint64_t shots,
                                       uint64_t seed, const SimulationOptions &options = {});

/// Both copies prepared by the same Clifford circuit.
BellSampleSet simulate_bell_circuit(const Circuit &prep, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                                    const SimulationOptions &options = {});

/// Emulates rho_code (x) rho_code for a k = 1 code from two settings with equal
/// shots: both copies encoded |0>_L, then copy two additionally flipped by
/// `logical_x` (as gates, so it sees gate noise). The first half of the shots
/// (rounded up) is the first setting.
BellSampleSet simulate_two_setting(const Circuit &encoder, const PauliString &logical_x, const NoiseModel &noise,
                                   uint64_t shots, uint64_t seed, const SimulationOptions &options = {});

/// Generic code sampling: project each copy into the code space and twirl it by
/// a random normalizer element, which yields rho_code (x) rho_code exactly.
BellSampleSet simulate_code(const StabilizerGroup &code, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                            const SimulationOptions &options = {});

/// Steane |0>_L encoder run in the two-setting mode with logical X = X^7.
BellSampleSet simulate_steane(const NoiseModel &noise, uint64_t shots, uint64_t seed,
                              const SimulationOptions &options = {});

/// Stabilizer families run through the circuit simulator; other families are
/// sampled from their exact noisy TPD (gate noise does not apply to them).
BellSampleSet sample_family(const StateFamily &family, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                            const SimulationOptions &options = {});

/// Effect of applying `pauli` to one copy: X flips the z-bit, Z the x-bit, Y both.
void pauli_frame_update(uint8_t *shot_symbols, const PauliString &pauli);

/// Bit g is 1 iff S_g (x) S_g has eigenvalue -1 on the outcome.
std::vector<uint8_t> check_parities(const uint8_t *shot_symbols, int n, const StabilizerGroup &code);
/// Same, packed into an integer (bit g = generator g); needs n - k <= 64.
uint64_t syndrome_bits(const uint8_t *shot_symbols, const StabilizerGroup &code);

class LookupDecoder {
 public:
    /// Minimum-weight correction per syndrome; ties go to the first error in
    /// order of weight, then qubit subsets in lexicographic order, then letters
    /// with X < Y < Z on the lowest qubit first.
    explicit LookupDecoder(StabilizerGroup code, int max_syndrome_bits = 20);

    const StabilizerGroup &code() const { return code_; }
    /// Correction for a packed syndrome.
    const PauliString &correction(uint64_t syndrome) const;
    size_t table_size() const { return table_.size(); }

 private:
    StabilizerGroup code_;
    std::vector<PauliString> table_;
    std::vector<uint8_t> filled_;
};

/// Applies the decoded correction to every shot; afterwards all syndromes are zero.
BellSampleSet correct(const BellSampleSet &samples, const LookupDecoder &decoder);

struct PostselectResult {
    BellSampleSet kept;
    double retained_fraction = 0.0;
};

/// Keeps the zero-syndrome shots.
PostselectResult postselect(const BellSampleSet &samples, const StabilizerGroup &code);

}  // namespace qwe

#endif

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

#include <cmath>
#include <random>

#include "doctest.h"
#include "qwe/errors.hpp"
#include "qwe/sampler.hpp"
#include "qwe/transforms.hpp"

using namespace qwe;

namespace {

double tv_distance(const std::vector<uint64_t> &hist, const EnumeratorVector &tpd) {
    uint64_t shots = 0;
    for (auto c : hist) shots += c;
    double tv = 0;
    for (size_t i = 0; i < hist.size(); i++) tv += std::abs(double(hist[i]) / double(shots) - tpd[i]);
    return 0.5 * tv;
}

double tv_bound(int n, uint64_t shots) {
    return 4 * std::sqrt(double(n + 1) / double(shots));
}

}  // namespace

TEST_CASE("product state yields only triplets") {
    // |0>|0> = (Phi+ + Phi-)/sqrt2 on every pair.
    auto s = simulate_bell_circuit(Circuit(4), NoiseModel{}, 2000, 1);
    uint64_t minus = 0;
    for (auto sym : s.symbols) {
        CHECK((sym == kPhiPlus || sym == kPhiMinus));
        minus += sym == kPhiMinus;
    }
    CHECK(std::abs(double(minus) / 8000 - 0.5) < 0.03);
    CHECK(s.triplet_histogram() == std::vector<uint64_t>{0, 0, 0, 0, 2000});
}

TEST_CASE("Bell pair copies give equal symbols on both pairs") {
    Circuit c(2);
    c.h(0).cnot(0, 1);
    auto s = simulate_bell_circuit(c, NoiseModel{}, 40000, 2);
    std::vector<int> counts(4, 0);
    for (uint64_t k = 0; k < s.shots; k++) {
        CHECK(s.shot(k)[0] == s.shot(k)[1]);
        counts[s.shot(k)[0]]++;
    }
    for (int c4 : counts) CHECK(std::abs(c4 / 40000.0 - 0.25) < 0.01);
}

TEST_CASE("sampler matches exact TPDs") {
    const uint64_t shots = 100000;
    for (auto f : {StateFamily::make(FamilyTag::product_zero, 3), StateFamily::make(FamilyTag::ghz, 6),
                   StateFamily::make(FamilyTag::ame6, 6), StateFamily::make(FamilyTag::line_graph, 5),
                   StateFamily::make(FamilyTag::cycle_graph, 5), StateFamily::make(FamilyTag::bell_pairs, 4)}) {
        CAPTURE(f.descriptor());
        auto s = sample_family(f, NoiseModel{}, shots, 17);
        auto tpd = convert(family_sld(f), VectorKind::tpd);
        CHECK(tv_distance(s.triplet_histogram(), tpd) < tv_bound(f.n, shots));
        for (uint64_t k = 0; k < s.shots; k++) CHECK_MESSAGE(s.singlets(k) % 2 == 0, "odd singlets in pure state");
    }
    auto ce = code_enumerators(StabilizerGroup::steane());
    auto steane = simulate_steane(NoiseModel{}, shots, 5);
    CHECK(tv_distance(steane.triplet_histogram(), ce.tpd()) < tv_bound(7, shots));
    auto twirled = simulate_code(StabilizerGroup::steane(), NoiseModel{}, shots, 6);
    CHECK(tv_distance(twirled.triplet_histogram(), ce.tpd()) < tv_bound(7, shots));
}

TEST_CASE("readout noise realizes the depolarized TPD") {
    const uint64_t shots = 100000;
    auto f = StateFamily::make(FamilyTag::ghz, 4);
    NoiseModel noise;
    noise.p = 0.125;
    auto s = sample_family(f, noise, shots, 8);
    auto tpd = noisy_family_enumerators(f, mpq_class(1, 8)).tpd;
    CHECK(tv_distance(s.triplet_histogram(), tpd) < tv_bound(4, shots));
}

TEST_CASE("determinism and thread independence") {
    NoiseModel noise;
    noise.p = 0.05;
    noise.circuit_error_rate = 0.01;
    SimulationOptions one, three;
    one.threads = 1;
    three.threads = 3;
    auto a = simulate_bell_circuit(steane_encoder(), noise, 5000, 99, one);
    auto b = simulate_bell_circuit(steane_encoder(), noise, 5000, 99, three);
    auto c = simulate_bell_circuit(steane_encoder(), noise, 5000, 100, one);
    CHECK(a.symbols == b.symbols);
    CHECK(a.symbols != c.symbols);
}

TEST_CASE("sample_tpd") {
    auto delta = EnumeratorVector(VectorKind::tpd, std::vector<double>{0, 0, 0, 1});
    CHECK(sample_tpd(delta, 1000, 1).histogram == std::vector<uint64_t>{0, 0, 0, 1000});
    auto mm = family_enumerators(StateFamily::make(FamilyTag::maximally_mixed, 2));
    const uint64_t shots = 1000000;
    auto h = sample_tpd(mm, shots, 3).histogram;
    for (int i = 0; i <= 2; i++) {
        double p = mm[i];
        double sigma = std::sqrt(p * (1 - p) / shots);
        CHECK(std::abs(double(h[i]) / shots - p) < 4 * sigma);
    }
    auto ce = code_enumerators(StabilizerGroup::steane());
    auto hs = sample_tpd(ce.tpd(), 100000, 4).histogram;
    double mean = 0, exact = 0, second = 0;
    for (int i = 0; i <= 7; i++) {
        mean += i * double(hs[i]) / 100000;
        exact += i * ce.tpd()[i];
        second += i * i * ce.tpd()[i];
    }
    CHECK(std::abs(mean - exact) < 3 * std::sqrt((second - exact * exact) / 100000));
    CHECK_THROWS_AS(sample_tpd(EnumeratorVector(VectorKind::tpd, std::vector<double>{-0.5, 1.5}), 10, 1),
                    ContractViolation);
}

TEST_CASE("pauli frame update") {
    uint8_t s[3] = {kPhiPlus, kPsiPlus, kPhiMinus};
    pauli_frame_update(s, PauliString::parse("XZY"));
    CHECK(s[0] == kPsiPlus);
    CHECK(s[1] == kPsiMinus);
    CHECK(s[2] == kPsiPlus);
    uint8_t t[2] = {kPhiPlus, kPsiMinus};
    pauli_frame_update(t, PauliString::parse("II"));
    CHECK(t[0] == kPhiPlus);
    CHECK(t[1] == kPsiMinus);
}

TEST_CASE("parity checks") {
    auto code = StabilizerGroup::steane();
    std::vector<uint8_t> zero(7, kPhiPlus);
    for (auto b : check_parities(zero.data(), 7, code)) CHECK(b == 0);
    auto flipped = zero;
    flipped[2] = kPsiPlus;
    auto bits = check_parities(flipped.data(), 7, code);
    // Qubit 2 is covered by ZIZIZIZ and IZZIIZZ.
    CHECK(bits == std::vector<uint8_t>{0, 0, 0, 1, 1, 0});
    StabilizerGroup empty(3, {});
    CHECK(check_parities(zero.data(), 3, empty).empty());
    CHECK_THROWS_AS(check_parities(zero.data(), 6, code), ContractViolation);

    // Syndrome linearity under frame updates.
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> sym(0, 3);
    for (int trial = 0; trial < 200; trial++) {
        std::vector<uint8_t> s(7);
        for (auto &v : s) v = static_cast<uint8_t>(sym(rng));
        PauliString e(7);
        for (int q = 0; q < 7; q++) e.set(q, sym(rng));
        auto before = check_parities(s.data(), 7, code);
        auto se = code.syndrome(e);
        pauli_frame_update(s.data(), e);
        auto after = check_parities(s.data(), 7, code);
        for (int g = 0; g < 6; g++) CHECK(after[g] == (before[g] ^ se[g]));
    }
}

TEST_CASE("lookup decoder") {
    auto code = StabilizerGroup::steane();
    LookupDecoder dec(code);
    CHECK(dec.table_size() == 64);
    CHECK(dec.correction(0).is_identity());
    auto z1 = PauliString::single(7, 1, 3);
    uint64_t s = 0;
    auto bits = code.syndrome(z1);
    for (int g = 0; g < 6; g++) s |= uint64_t(bits[g]) << g;
    CHECK(dec.correction(s) == z1);
    for (int q = 0; q < 7; q++) {
        for (int l = 1; l <= 3; l++) {
            auto e = PauliString::single(7, q, l);
            auto sb = code.syndrome(e);
            uint64_t key = 0;
            for (int g = 0; g < 6; g++) key |= uint64_t(sb[g]) << g;
            CHECK(dec.correction(key) == e);
        }
    }
    CHECK_THROWS_AS(LookupDecoder(code, 4), ResourceLimit);
}

TEST_CASE("correction and postselection") {
    auto code = StabilizerGroup::steane();
    auto clean = simulate_steane(NoiseModel{}, 2000, 7);
    auto ps = postselect(clean, code);
    CHECK(ps.retained_fraction == 1.0);
    NoiseModel noise;
    noise.circuit_error_rate = 0.01;
    auto noisy = simulate_steane(noise, 20000, 7);
    auto ps2 = postselect(noisy, code);
    CHECK(ps2.retained_fraction > 0.2);
    CHECK(ps2.retained_fraction < 0.8);
    auto fixed = correct(noisy, LookupDecoder(code));
    for (uint64_t k = 0; k < fixed.shots; k++) CHECK(syndrome_bits(fixed.shot(k), code) == 0);
    CHECK(postselect(fixed, code).retained_fraction == 1.0);
}

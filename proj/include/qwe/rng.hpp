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

#ifndef QWE_RNG_HPP
#define QWE_RNG_HPP

#include <cstdint>
#include <limits>

namespace qwe {

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// SplitMix64 stream keyed by (seed, stream index). Output k of stream s is a
/// pure function of (seed, s, k), so shots and bootstrap resamples can be
/// processed in any order or on any thread with identical results.
class StreamRng {
 public:
    using result_type = uint64_t;

    StreamRng(uint64_t seed, uint64_t stream)
        : state_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ull))) {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    result_type operator()() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool coin() { return ((*this)() >> 63) != 0; }

    /// Uniform integer in [0, k) by Lemire's multiply-shift (bias < 2^-64 * k).
    uint32_t below(uint32_t k) {
        return static_cast<uint32_t>((static_cast<unsigned __int128>((*this)()) * k) >> 64);
    }

 private:
    uint64_t state_;
};

}  // namespace qwe

#endif

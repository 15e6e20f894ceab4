// Copyright 2026 The PEv Simulator Authors
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
/**
 * @file
 * Reproducible, splittable random streams.
 *
 * A stream is a std::mt19937_64 whose seed is hashed by std::seed_seq from
 * its path: the user seed, the stream index and the indices of every split
 * leading to it. Both the engine and seed_seq are fully specified, so
 * draws are identical across platforms, and child streams can be handed to
 * parallel workers without coordination.
 */

#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace pev {

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0) {
        append(seed);
        append(stream);
        reseed();
    }

    /// Independent child stream for `index`; the parent is not advanced.
    [[nodiscard]] RandomStream split(std::uint64_t index) const {
        RandomStream child(*this, index);
        return child;
    }

    std::uint64_t next_u64() {
        ++counter_;
        return engine_();
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11U) * 0x1.0p-53; }

    /// Number of 64-bit draws taken so far.
    [[nodiscard]] std::uint64_t counter() const noexcept { return counter_; }

  private:
    RandomStream(const RandomStream &parent, std::uint64_t index)
        : path_(parent.path_) {
        append(index);
        reseed();
    }

    void append(std::uint64_t v) {
        path_.push_back(static_cast<std::uint32_t>(v));
        path_.push_back(static_cast<std::uint32_t>(v >> 32U));
    }

    void reseed() {
        std::seed_seq seq(path_.begin(), path_.end());
        std::uint32_t words[2];
        seq.generate(words, words + 2);
        engine_.seed((std::uint64_t{words[1]} << 32U) | words[0]);
    }

    std::vector<std::uint32_t> path_;
    std::mt19937_64 engine_;
    std::uint64_t counter_ = 0;
};

} // namespace pev

// Copyright 2026 The sqlink Authors
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

#ifndef SQLINK_PHILOX_H
#define SQLINK_PHILOX_H

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sqlink {

/// Name recorded in every Monte Carlo output. Bump if the draw layout changes.
inline constexpr std::string_view kRngName = "philox4x32-10/v1";

using PhiloxCounter = std::array<uint32_t, 4>;
using PhiloxKey = std::array<uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Pure function of (counter, key).
constexpr PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    constexpr uint32_t kMul0 = 0xD2511F53u;
    constexpr uint32_t kMul1 = 0xCD9E8D57u;
    constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        uint64_t p0 = uint64_t{kMul0} * ctr[0];
        uint64_t p1 = uint64_t{kMul1} * ctr[2];
        auto hi0 = static_cast<uint32_t>(p0 >> 32);
        auto lo0 = static_cast<uint32_t>(p0);
        auto hi1 = static_cast<uint32_t>(p1 >> 32);
        auto lo1 = static_cast<uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Counter-mode engine over philox4x32_10. The key is the 64-bit seed; the
/// counter is (block index, stream). Satisfies UniformRandomBitGenerator with
/// 64-bit output, two outputs per block.
class PhiloxEngine {
   public:
    using result_type = uint64_t;

    explicit PhiloxEngine(uint64_t seed, uint64_t stream = 0) noexcept
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)}, stream_(stream) {}

    static constexpr result_type min() noexcept {
        return 0;
    }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    /// Positions the engine at the start of `block`; buffered output is dropped.
    void seek(uint64_t block) noexcept {
        block_ = block;
        buffered_ = 0;
    }
    uint64_t block() const noexcept {
        return block_;
    }

    /// Next whole block. Any half-consumed block is skipped.
    PhiloxCounter next_block() noexcept {
        buffered_ = 0;
        return generate(block_++);
    }

    result_type operator()() noexcept {
        if (buffered_ == 0) {
            PhiloxCounter words = generate(block_++);
            pending_ = (uint64_t{words[3]} << 32) | words[2];
            buffered_ = 1;
            return (uint64_t{words[1]} << 32) | words[0];
        }
        buffered_ = 0;
        return pending_;
    }

   private:
    PhiloxCounter generate(uint64_t block) const noexcept {
        return philox4x32_10({static_cast<uint32_t>(block), static_cast<uint32_t>(block >> 32),
                              static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32)},
                             key_);
    }

    PhiloxKey key_;
    uint64_t stream_;
    uint64_t block_ = 0;
    uint64_t pending_ = 0;
    int buffered_ = 0;
};

}  // namespace sqlink

#endif

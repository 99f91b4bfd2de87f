// SPDX-License-Identifier: Apache-2.0
//
// aris-blockage: Monte Carlo blockage simulator for UAV-mounted RIS links
// Copyright (C) 2026 The aris-blockage authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace aris
{

// Anything that hands out uniform doubles in [0, 1). The samplers are written
// against this so tests can substitute constant or scripted streams.
template <typename R>
concept UnitRandom = requires(R &r) {
    { r.uniform01() } -> std::convertible_to<double>;
};

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
// easy as 1, 2, 3", SC'11). Pure function of (counter, key).
inline std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key)
{
    constexpr std::uint32_t M0 = 0xD2511F53u;
    constexpr std::uint32_t M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u;
    constexpr std::uint32_t W1 = 0xBB67AE85u;

    auto round = [](std::array<std::uint32_t, 4> &c, const std::array<std::uint32_t, 2> &k) {
        const std::uint64_t p0 = std::uint64_t(M0) * c[0];
        const std::uint64_t p1 = std::uint64_t(M1) * c[2];
        const auto hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
        const auto hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    };

    round(ctr, key);
    for (int i = 1; i < 10; ++i)
    {
        key[0] += W0;
        key[1] += W1;
        round(ctr, key);
    }
    return ctr;
}

// Counter-based random stream. The key is the 64-bit seed, the upper half of
// the counter is the stream index, and the lower half counts blocks within the
// stream, so every (seed, stream) pair owns 2^64 blocks of its own.
class PhiloxStream
{
  public:
    PhiloxStream(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)}, stream_(stream)
    {
    }

    std::uint64_t next_u64() noexcept
    {
        if (used_ == 2)
            refill();
        const std::uint64_t v = (std::uint64_t(buf_[2 * used_ + 1]) << 32) | buf_[2 * used_];
        ++used_;
        return v;
    }

    // 53 random mantissa bits; never returns 1.0.
    double uniform01() noexcept { return double(next_u64() >> 11) * 0x1.0p-53; }

    std::uint64_t seed() const noexcept { return std::uint64_t(key_[1]) << 32 | key_[0]; }
    std::uint64_t stream() const noexcept { return stream_; }

  private:
    void refill() noexcept
    {
        buf_ = philox4x32_10({std::uint32_t(block_), std::uint32_t(block_ >> 32), std::uint32_t(stream_),
                              std::uint32_t(stream_ >> 32)},
                             key_);
        ++block_;
        used_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 2;
};

static_assert(UnitRandom<PhiloxStream>);

// The random stream owned by one Monte Carlo trial.
inline PhiloxStream trial_rng(std::uint64_t seed, std::uint64_t trial_index) noexcept
{
    return PhiloxStream(seed, trial_index);
}

} // namespace aris

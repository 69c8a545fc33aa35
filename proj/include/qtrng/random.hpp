#pragma once

// Deterministic, splittable randomness built on the Philox4x64-10 counter
// block cipher. A stream is addressed by (key, role, block):
//
//   key     = (seed, salt)          -- fixed per master seed
//   counter = (draw, block, role, 0)
//
// where role is a 64-bit label hash and draw counts cipher blocks. Distinct
// (role, block) pairs index disjoint counter lanes of the same keyed
// permutation, so labeled substreams and block substreams can never overlap
// for fewer than 2^64 draws each.

#include <array>
#include <cstdint>
#include <string_view>

namespace qtrng {

// Raw Philox4x64-10 block function; exposed for known-answer tests.
std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key);

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed);

    // Independent stream for a named role. Chains: s.substream("a").substream("b")
    // differs from s.substream("b").substream("a").
    RandomStream substream(std::string_view label) const;

    // Parallel lane of this stream; lane 0 is the stream itself.
    RandomStream block(std::uint64_t block_index) const;

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double next_unit();

    // Uniform on {0, 1, 2}: rejection sampling on 2-bit draws (value 3 rejected).
    int next_trit();

    std::uint64_t seed() const { return key_[0]; }

  private:
    RandomStream(std::array<std::uint64_t, 2> key, std::uint64_t role, std::uint64_t block);

    void refill();

    std::array<std::uint64_t, 2> key_;
    std::uint64_t role_ = 0;
    std::uint64_t block_ = 0;
    std::uint64_t draw_ = 0;  // cipher blocks consumed
    std::array<std::uint64_t, 4> buffer_{};
    unsigned buffer_pos_ = 4;  // 4 = empty
};

}  // namespace qtrng

#include "qtrng/random.hpp"

namespace qtrng {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

// Key salt so that RandomStream(seed) and a hypothetical (seed, 0) key user
// do not collide; value is arbitrary but fixed forever.
constexpr std::uint64_t kKeySalt = 0x71F4D6B8E08A52C1ULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
    const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
    hi = static_cast<std::uint64_t>(p >> 64);
    lo = static_cast<std::uint64_t>(p);
}

inline std::array<std::uint64_t, 4> round_once(const std::array<std::uint64_t, 4>& c,
                                               const std::array<std::uint64_t, 2>& k) {
    std::uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

std::uint64_t fnv1a(std::uint64_t basis, std::string_view s) {
    std::uint64_t h = basis ^ 0xCBF29CE484222325ULL;
    for (const char ch : s) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001B3ULL;
    }
    return h;
}

}  // namespace

std::array<std::uint64_t, 4> philox4x64(const std::array<std::uint64_t, 4>& counter,
                                        const std::array<std::uint64_t, 2>& key) {
    std::array<std::uint64_t, 4> c = counter;
    std::array<std::uint64_t, 2> k = key;
    for (int r = 0; r < 9; ++r) {
        c = round_once(c, k);
        k = {k[0] + kWeyl0, k[1] + kWeyl1};
    }
    return round_once(c, k);
}

RandomStream::RandomStream(std::uint64_t seed) : key_{seed, kKeySalt} {}

RandomStream::RandomStream(std::array<std::uint64_t, 2> key, std::uint64_t role,
                           std::uint64_t block)
    : key_(key), role_(role), block_(block) {}

RandomStream RandomStream::substream(std::string_view label) const {
    return RandomStream(key_, fnv1a(role_, label), 0);
}

RandomStream RandomStream::block(std::uint64_t block_index) const {
    return RandomStream(key_, role_, block_index);
}

void RandomStream::refill() {
    buffer_ = philox4x64({draw_, block_, role_, 0}, key_);
    ++draw_;
    buffer_pos_ = 0;
}

std::uint64_t RandomStream::next_u64() {
    if (buffer_pos_ >= 4) refill();
    return buffer_[buffer_pos_++];
}

double RandomStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

int RandomStream::next_trit() {
    for (;;) {
        const int v = static_cast<int>(next_u64() & 3u);
        if (v < 3) return v;
    }
}

}  // namespace qtrng

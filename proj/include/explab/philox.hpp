#ifndef EXPLAB_PHILOX_HPP
#define EXPLAB_PHILOX_HPP

#include <array>
#include <cstdint>

namespace explab {

/// Philox4x32-10 counter-based generator (Salmon et al.). Output depends
/// only on (key, counter), which is what makes parallel Monte Carlo
/// reproducible: every draw is addressed, never streamed.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) {
    constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
    constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * ctr[0];
        std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * ctr[2];
        std::array<std::uint32_t, 4> next = {
            static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
            static_cast<std::uint32_t>(p1),
            static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
            static_cast<std::uint32_t>(p0),
        };
        ctr = next;
        key[0] += kW0;
        key[1] += kW1;
    }
    return ctr;
}

/// One addressed draw stream: (seed, stream) select the key, the caller
/// indexes draws by counter.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint64_t bits(std::uint64_t index) const {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32),
            static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                            static_cast<std::uint32_t>(seed_ >> 32)};
        auto out = philox4x32(ctr, key);
        return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    }

    /// Uniform double in [0,1) with 53 random bits.
    double uniform(std::uint64_t index) const {
        return static_cast<double>(bits(index) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

}  // namespace explab

#endif

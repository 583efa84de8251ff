#pragma once

#include <array>
#include <cstdint>

namespace wt {

// Philox4x32-10 counter-based generator
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

// Stream of uniforms keyed by (seed, stream_id); the position is the block counter
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_(stream_id) {}
    std::uint32_t next_u32();
    std::uint64_t next_u64();
    // [0, 1) with 53 random bits
    double uniform();
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

private:
    std::uint64_t seed_, stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

} // namespace wt

#pragma once

#include <array>
#include <cstdint>

namespace cellrate::mc {

// Philox4x32-10 counter-based block cipher: 128-bit counter, 64-bit key,
// 128 random bits per block. Pure function of (key, counter), which is what
// makes per-drop substreams reproducible independent of thread count.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// One independent stream of doubles, keyed by (seed, substream, stream_class).
// Typical use: one substream per Monte-Carlo drop.
class RngStream {
  public:
    RngStream(uint64_t seed, uint64_t substream, uint32_t stream_class = 0)
        : key_{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32)},
          base_{0, static_cast<uint32_t>(substream),
                static_cast<uint32_t>(substream >> 32), stream_class} {}

    // Uniform on [0, 1), 53-bit resolution.
    double next_double() {
        if (pos_ == 2) refill();
        return buf_[pos_++];
    }

    // Exponential with unit mean (inverse CDF of the uniform above; never inf).
    double next_exponential();

  private:
    void refill();

    std::array<uint32_t, 2> key_;
    std::array<uint32_t, 4> base_;  // base_[0] is the per-stream block counter
    double buf_[2] = {0, 0};
    int pos_ = 2;
};

}  // namespace cellrate::mc

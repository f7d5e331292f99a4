#include "cellrate/montecarlo/philox.hpp"

#include <cmath>

namespace cellrate::mc {

namespace {
constexpr uint32_t kMul0 = 0xD2511F53u;
constexpr uint32_t kMul1 = 0xCD9E8D57u;
constexpr uint32_t kWeyl0 = 0x9E3779B9u;
constexpr uint32_t kWeyl1 = 0xBB67AE85u;
}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
    std::array<uint32_t, 4> c = counter;
    std::array<uint32_t, 2> k = key;
    for (int round = 0; round < 10; ++round) {
        const uint64_t p0 = static_cast<uint64_t>(kMul0) * c[0];
        const uint64_t p1 = static_cast<uint64_t>(kMul1) * c[2];
        c = {static_cast<uint32_t>(p1 >> 32) ^ c[1] ^ k[0],
             static_cast<uint32_t>(p1),
             static_cast<uint32_t>(p0 >> 32) ^ c[3] ^ k[1],
             static_cast<uint32_t>(p0)};
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

void RngStream::refill() {
    std::array<uint32_t, 4> ctr = base_;
    const std::array<uint32_t, 4> out = philox4x32(ctr, key_);
    ++base_[0];
    const uint64_t a = (static_cast<uint64_t>(out[0]) << 32) | out[1];
    const uint64_t b = (static_cast<uint64_t>(out[2]) << 32) | out[3];
    buf_[0] = static_cast<double>(a >> 11) * 0x1.0p-53;
    buf_[1] = static_cast<double>(b >> 11) * 0x1.0p-53;
    pos_ = 0;
}

double RngStream::next_exponential() {
    // u < 1 strictly, so the argument of log1p stays above -1.
    return -std::log1p(-next_double());
}

}  // namespace cellrate::mc

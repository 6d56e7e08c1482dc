#if defined(__aarch64__)

#include <arm_neon.h>

#include "sepsys/kernels.hpp"

namespace sepsys::kernels::neon {

std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern)
{
    const uint64x2_t vmask = vdupq_n_u64(mask);
    const uint64x2_t vpattern = vdupq_n_u64(pattern);
    uint64x2_t acc = vdupq_n_u64(0);

    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t w = vld1q_u64(words + i);
        // all-ones lanes on match; shifting right by 63 turns them into 1
        uint64x2_t eq = vceqq_u64(vandq_u64(w, vmask), vpattern);
        acc = vaddq_u64(acc, vshrq_n_u64(eq, 63));
    }
    std::size_t count = static_cast<std::size_t>(vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1));
    for (; i < n; ++i)
        count += (words[i] & mask) == pattern;
    return count;
}

std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask, Bits pattern)
{
    const uint64x2_t vmask = vdupq_n_u64(mask);
    const uint64x2_t vpattern = vdupq_n_u64(pattern);

    std::size_t i = from;
    for (; i + 2 <= n; i += 2) {
        uint64x2_t eq = vceqq_u64(vandq_u64(vld1q_u64(words + i), vmask), vpattern);
        if (vgetq_lane_u64(eq, 0) != 0)
            return i;
        if (vgetq_lane_u64(eq, 1) != 0)
            return i + 1;
    }
    for (; i < n; ++i)
        if ((words[i] & mask) == pattern)
            return i;
    return n;
}

} // namespace sepsys::kernels::neon

#endif

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#include "sepsys/kernels.hpp"

// Only these functions are compiled for AVX2; dispatch guarantees they are
// never reached on a CPU without it.
#define SEPSYS_AVX2 __attribute__((target("avx2,popcnt")))

namespace sepsys::kernels::avx2 {

namespace {

SEPSYS_AVX2 inline unsigned lane_hits(const Bits* p, __m256i vmask, __m256i vpattern)
{
    __m256i w = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
    __m256i eq = _mm256_cmpeq_epi64(_mm256_and_si256(w, vmask), vpattern);
    return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(eq)));
}

} // namespace

SEPSYS_AVX2 std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern)
{
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vpattern = _mm256_set1_epi64x(static_cast<long long>(pattern));

    std::size_t count = 0;
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        unsigned hits = lane_hits(words + i, vmask, vpattern) |
                        (lane_hits(words + i + 4, vmask, vpattern) << 4);
        count += static_cast<std::size_t>(_mm_popcnt_u32(hits));
    }
    for (; i + 4 <= n; i += 4)
        count += static_cast<std::size_t>(_mm_popcnt_u32(lane_hits(words + i, vmask, vpattern)));
    for (; i < n; ++i)
        count += (words[i] & mask) == pattern;
    return count;
}

SEPSYS_AVX2 std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask,
                                   Bits pattern)
{
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vpattern = _mm256_set1_epi64x(static_cast<long long>(pattern));

    std::size_t i = from;
    for (; i + 4 <= n; i += 4) {
        unsigned hits = lane_hits(words + i, vmask, vpattern);
        if (hits != 0)
            return i + static_cast<std::size_t>(std::countr_zero(hits));
    }
    for (; i < n; ++i)
        if ((words[i] & mask) == pattern)
            return i;
    return n;
}

} // namespace sepsys::kernels::avx2

#endif

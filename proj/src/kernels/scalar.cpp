#include "sepsys/kernels.hpp"

namespace sepsys::kernels::scalar {

std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern)
{
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i)
        count += (words[i] & mask) == pattern;
    return count;
}

std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask, Bits pattern)
{
    for (std::size_t i = from; i < n; ++i)
        if ((words[i] & mask) == pattern)
            return i;
    return n;
}

} // namespace sepsys::kernels::scalar

#include "sepsys/bounds.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "sepsys/family.hpp"

namespace sepsys::bounds {

namespace {

void require_n(std::uint64_t n)
{
    if (n < 2)
        throw Error(ErrorKind::parameter, "n must be at least 2, got " + std::to_string(n));
}

void require_k(int k)
{
    if (k < 1)
        throw Error(ErrorKind::parameter, "k must be at least 1, got " + std::to_string(k));
}

// Scan bound: every formula here is satisfied well before this for 64-bit n.
constexpr int kScanLimit = 1 << 20;

template <typename Pred>
int smallest_m(int from, Pred&& pred)
{
    for (int m = from; m < kScanLimit; ++m)
        if (pred(m))
            return m;
    throw Error(ErrorKind::overflow, "upward scan did not terminate");
}

// C(m, j) >= n, treating overflow as "large enough".
bool binom_at_least(int m, int j, std::uint64_t n)
{
    try {
        return binom(m, j) >= n;
    } catch (const Error&) {
        return true;
    }
}

} // namespace

std::uint64_t binom(int m, int j)
{
    if (m < 0)
        throw Error(ErrorKind::parameter, "binom: negative m");
    if (j < 0 || j > m)
        return 0;
    j = std::min(j, m - j);
    unsigned __int128 r = 1;
    for (int i = 0; i < j; ++i) {
        // C(m, i) * (m - i) / (i + 1) = C(m, i + 1), so the division is exact
        r = r * static_cast<unsigned>(m - i) / static_cast<unsigned>(i + 1);
        if (r > static_cast<unsigned __int128>(UINT64_MAX))
            throw Error(ErrorKind::overflow, "binom(" + std::to_string(m) + ", " + std::to_string(j) +
                                                 ") exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(r);
}

int k_prime(int m, int k)
{
    if (m < 1)
        throw Error(ErrorKind::parameter, "k_prime: m must be at least 1");
    require_k(k);
    return m >= 2 * k - 1 ? k : m / 2;
}

int min_m_hcs(std::uint64_t n, int k)
{
    require_n(n);
    require_k(k);
    return smallest_m(1, [&](int m) { return binom_at_least(m, k_prime(m, k), n); });
}

int separating_min(std::uint64_t n)
{
    if (n < 1)
        throw Error(ErrorKind::parameter, "n must be at least 1");
    return static_cast<int>(std::bit_width(n - 1));
}

int spencer_min(std::uint64_t n)
{
    require_n(n);
    return smallest_m(1, [&](int m) { return binom_at_least(m, m / 2, n); });
}

int f2_exact(std::uint64_t n)
{
    require_n(n);
    if (n <= 10)
        return static_cast<int>((n + 1) / 2);
    return smallest_m(2, [&](int m) { return binom_at_least(m, 2, n); });
}

BoundPair f_bounds(std::uint64_t n, int k)
{
    require_n(n);
    require_k(k);
    BoundPair b;
    b.upper = min_m_hcs(n, k);
    const int info = separating_min(n);
    if (!binom_at_least(2 * k - 1, k, n)) {
        const std::uint64_t scale = std::uint64_t{1} << std::min(k, 63);
        const int formula = smallest_m(1, [&](int m) {
            try {
                std::uint64_t c = binom(m, k);
                return c >= (n + scale - 1) / scale;
            } catch (const Error&) {
                return true;
            }
        });
        b.lower_source = LowerSource::pair_family;
        b.clamped = formula < info;
        b.lower = std::max(formula, info);
    } else {
        b.lower_source = LowerSource::info_theoretic;
        b.lower = info;
    }
    if (b.lower > b.upper)
        throw Error(ErrorKind::precondition, "bound sandwich inverted for n=" + std::to_string(n));
    return b;
}

} // namespace sepsys::bounds

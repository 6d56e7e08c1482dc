#pragma once

// Closed-form extremal values, all in exact integer arithmetic by upward scan.
// Functions named after f(n, k) reject n < 2.

#include <cstdint>

namespace sepsys::bounds {

/// C(m, j); 0 when j < 0 or j > m. Throws Error(overflow) past 64 bits.
std::uint64_t binom(int m, int j);

/// k if m >= 2k-1, else floor(m/2). At m = 2k-1 both branches give the same binomial.
int k_prime(int m, int k);

/// Smallest m with C(m, k'(m)) >= n: minimum size of a k-hypercompletely separating system.
int min_m_hcs(std::uint64_t n, int k);

/// ceil(log2 n): minimum size of a separating system on n elements.
int separating_min(std::uint64_t n);

/// Smallest m with C(m, floor(m/2)) >= n: minimum size of a completely separating system.
int spencer_min(std::uint64_t n);

/// f(n, 2): ceil(n/2) for n <= 10, otherwise the smallest m with C(m, 2) >= n.
int f2_exact(std::uint64_t n);

enum class LowerSource { pair_family, info_theoretic };

struct BoundPair {
    int lower = 0;
    int upper = 0;
    LowerSource lower_source = LowerSource::info_theoretic;
    bool lower_valid = true;
    bool upper_valid = true;
    // The pair-family formula fell below ceil(log2 n) and was raised to it.
    bool clamped = false;
};

/// lower <= f(n, k) <= upper.
BoundPair f_bounds(std::uint64_t n, int k);

} // namespace sepsys::bounds

#pragma once

// Word-scan kernels shared by the oracles and the searches.
//
// Every kernel answers a question of the form "which words w satisfy
// (w & mask) == pattern". Subset tests, duplicate detection, and separator
// uniqueness all reduce to it. The scalar variant is the reference; the
// vector variants must agree with it on every input.

#include <cstddef>
#include <span>
#include <string_view>

#include "sepsys/family.hpp"

namespace sepsys::kernels {

enum class Isa { scalar, avx2, neon };

struct KernelTable {
    Isa isa;
    std::size_t (*count_matches)(const Bits* words, std::size_t n, Bits mask, Bits pattern);
    // First index >= from whose word matches, or n if none.
    std::size_t (*find_match)(const Bits* words, std::size_t n, std::size_t from, Bits mask,
                              Bits pattern);
};

namespace scalar {
std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern);
std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask, Bits pattern);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern);
std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask, Bits pattern);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
std::size_t count_matches(const Bits* words, std::size_t n, Bits mask, Bits pattern);
std::size_t find_match(const Bits* words, std::size_t n, std::size_t from, Bits mask, Bits pattern);
} // namespace neon
#endif

/// True if this build carries the variant and the host CPU can run it.
bool supported(Isa isa) noexcept;

/// Throws Error(parameter) if the variant is unsupported here.
const KernelTable& table_for(Isa isa);

/// Best supported variant, detected once.
const KernelTable& active() noexcept;

/// Overrides the detected variant (tests and benchmarking). Must be supported.
void set_active(Isa isa);

std::string_view name(Isa isa) noexcept;

inline std::size_t count_matches(std::span<const Bits> words, Bits mask, Bits pattern)
{
    return active().count_matches(words.data(), words.size(), mask, pattern);
}

inline std::size_t find_match(std::span<const Bits> words, std::size_t from, Bits mask, Bits pattern)
{
    return active().find_match(words.data(), words.size(), from, mask, pattern);
}

} // namespace sepsys::kernels

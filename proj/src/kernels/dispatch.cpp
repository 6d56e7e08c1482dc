#include <atomic>

#include "sepsys/kernels.hpp"

namespace sepsys::kernels {

namespace {

constexpr KernelTable kScalar{Isa::scalar, &scalar::count_matches, &scalar::find_match};

#if defined(__x86_64__) || defined(_M_X64)
constexpr KernelTable kAvx2{Isa::avx2, &avx2::count_matches, &avx2::find_match};
#endif

#if defined(__aarch64__)
constexpr KernelTable kNeon{Isa::neon, &neon::count_matches, &neon::find_match};
#endif

const KernelTable* detect() noexcept
{
#if defined(__x86_64__) || defined(_M_X64)
    if (supported(Isa::avx2))
        return &kAvx2;
#endif
#if defined(__aarch64__)
    return &kNeon;
#endif
    return &kScalar;
}

std::atomic<const KernelTable*>& slot() noexcept
{
    static std::atomic<const KernelTable*> current{detect()};
    return current;
}

} // namespace

bool supported(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
        return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
        return true;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& table_for(Isa isa)
{
    if (!supported(isa))
        throw Error(ErrorKind::parameter, "kernel variant " + std::string(name(isa)) +
                                              " is not available on this host");
    switch (isa) {
    case Isa::scalar:
        return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::avx2:
        return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::neon:
        return kNeon;
#endif
    default:
        break;
    }
    return kScalar;
}

const KernelTable& active() noexcept { return *slot().load(std::memory_order_relaxed); }

void set_active(Isa isa) { slot().store(&table_for(isa), std::memory_order_relaxed); }

std::string_view name(Isa isa) noexcept
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

} // namespace sepsys::kernels

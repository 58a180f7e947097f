#include <cstdlib>
#include <string>

#include "kernels_detail.hpp"
#include "sgd/kernels.hpp"

namespace sgd::kernels {

const KernelTable* avx2_table()
{
#if defined(SGD_HAVE_AVX2_KERNELS) && defined(__x86_64__)
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    static const KernelTable table{detail::dsum_avx2, detail::rank1_avx2, "avx2"};
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_table()
{
    static const KernelTable* const chosen = [] {
        const char* env = std::getenv("SGDECOHERE_KERNEL");
        const std::string req = env ? env : "auto";
        if (req == "scalar") return &scalar_table();
        const KernelTable* simd = avx2_table();
        return simd ? simd : &scalar_table();
    }();
    return *chosen;
}

} // namespace sgd::kernels

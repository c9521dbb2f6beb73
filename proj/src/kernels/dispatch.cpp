#include <atomic>
#include <cstdlib>

#include "warptrend/kernels.hpp"

namespace warptrend::kernels {

#if defined(WARPTREND_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(WARPTREND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* find(std::string_view name) {
    for (const KernelTable* k : available_kernels())
        if (k->name == name) return k;
    return nullptr;
}

const KernelTable* initial_choice() {
    if (const char* env = std::getenv("WARPTREND_KERNELS")) {
        if (const KernelTable* k = find(env)) return k;
    }
    return available_kernels().back();
}

std::atomic<const KernelTable*>& slot() {
    static std::atomic<const KernelTable*> current{initial_choice()};
    return current;
}

}  // namespace

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
#if defined(WARPTREND_HAVE_AVX2)
    if (cpu_has_avx2()) out.push_back(&avx2_kernels());
#endif
    return out;
}

const KernelTable& active_kernels() { return *slot().load(std::memory_order_relaxed); }

bool select_kernels(std::string_view name) {
    const KernelTable* k = find(name);
    if (k == nullptr) return false;
    slot().store(k, std::memory_order_relaxed);
    return true;
}

}  // namespace warptrend::kernels

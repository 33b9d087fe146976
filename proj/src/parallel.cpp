#include "balfilt/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace balfilt::parallel {

namespace {

std::atomic<int> g_state{-1};  // -1 unset, 0 off, 1 on

bool initial_enabled() {
    const char* env = std::getenv("BALFILT_THREADS");
    if (env && std::strcmp(env, "1") == 0) return false;
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace

bool enabled() {
    int s = g_state.load(std::memory_order_relaxed);
    if (s < 0) {
        s = initial_enabled() ? 1 : 0;
        g_state.store(s, std::memory_order_relaxed);
    }
    return s == 1;
}

void set_enabled(bool on) { g_state.store(on ? 1 : 0, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
    if (enabled()) return omp_get_max_threads();
#endif
    return 1;
}

}  // namespace balfilt::parallel

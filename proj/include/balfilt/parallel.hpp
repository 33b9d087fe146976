#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace balfilt::parallel {

/// Runtime switch for the OpenMP paths. Defaults to on when compiled with
/// OpenMP; BALFILT_THREADS=1 or set_enabled(false) forces the serial
/// reference path. Every parallel loop in the library writes each result to
/// its own slot, so both paths produce identical output.
bool enabled();
void set_enabled(bool on);
int thread_count();

/// fn(i) for i in [0, n), independently. Exceptions thrown by fn are
/// captured and rethrown after the loop completes.
template <class F>
void for_each_index(std::size_t n, F&& fn) {
#ifdef _OPENMP
    if (enabled() && n > 1) {
        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

/// The serial reference path, unconditionally. Kept as a separate entry
/// point so tests and the benchmark can compare it against the parallel one.
template <class F>
void for_each_index_serial(std::size_t n, F&& fn) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace balfilt::parallel

#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

namespace conint {

// Execution mode for the O(n^2) pairwise kernels.  Serial is the reference
// implementation; Parallel distributes the outer (target) index over OpenMP
// threads while keeping the inner accumulation order unchanged, so both modes
// produce bit-identical results.  Auto switches to Parallel above a size
// threshold where the fork/join overhead pays off.
enum class Kernel { Auto, Serial, Parallel };

namespace detail {

inline constexpr std::size_t kParallelThreshold = 64;

inline bool run_parallel(Kernel k, std::size_t n) {
#ifdef _OPENMP
    switch (k) {
        case Kernel::Serial: return false;
        case Kernel::Parallel: return true;
        case Kernel::Auto: return n >= kParallelThreshold;
    }
    return false;
#else
    (void)k;
    (void)n;
    return false;
#endif
}

// Runs body(i) for i in [0, n). The body must only write state owned by
// index i; per-i work is identical in both modes.  Exceptions thrown inside
// the parallel region are trapped per iteration (an exception may not unwind
// out of an OpenMP loop) and one of them is rethrown after the join.
template <typename Body>
void parallel_for(Kernel kernel, std::size_t n, Body&& body) {
    if (run_parallel(kernel, n)) {
        std::exception_ptr err = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(conint_parallel_for_err)
#endif
                {
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (std::size_t i = 0; i < n; ++i) body(i);
    }
}

}  // namespace detail
}  // namespace conint

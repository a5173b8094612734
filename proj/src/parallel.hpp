#ifndef NORMBCH_SRC_PARALLEL_HPP
#define NORMBCH_SRC_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nbch::detail {

/// Runs fn(0) .. fn(workers - 1), one thread each; the first exception thrown
/// by any worker is rethrown on the caller's thread.
template <class Fn>
void run_workers(unsigned workers, Fn&& fn) {
    if (workers <= 1) {
        fn(0u);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    fn(w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace nbch::detail

#endif  // NORMBCH_SRC_PARALLEL_HPP

#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace spokess {

// Runs f(i) for i in [0, n). Work is claimed dynamically but each f(i) writes only its own
// slot, so results do not depend on the thread count. The lowest-index exception wins.
template <class F>
void parallel_for(std::size_t n, int threads, F&& f)
{
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errs(n);
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                f(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace spokess

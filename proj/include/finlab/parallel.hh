#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace finlab
{
    // Runs f(0..count-1) on up to `workers` threads. The exception from the lowest failing index
    // is rethrown, so failures are reported identically for every worker count.
    template <typename F_>
    auto parallel_for(std::size_t count, unsigned workers, F_ && f) -> void
    {
        std::vector<std::exception_ptr> failures(count);
        if (workers <= 1 || count <= 1) {
            for (std::size_t i = 0 ; i < count ; ++i) {
                try {
                    f(i);
                }
                catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        }
        else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned w = 0 ; w < workers && w < count ; ++w)
                pool.emplace_back([&] {
                    for (std::size_t i ; (i = next.fetch_add(1)) < count ; ) {
                        try {
                            f(i);
                        }
                        catch (...) {
                            failures[i] = std::current_exception();
                        }
                    }
                });
            for (auto & t : pool)
                t.join();
        }

        for (auto & e : failures)
            if (e)
                std::rethrow_exception(e);
    }
}

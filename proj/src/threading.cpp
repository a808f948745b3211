#include "hesc/threading.hpp"

#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hesc {

int thread_count() {
    if (const char* env = std::getenv("HESC_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (...) {
            // fall through to hardware default on unparsable values
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    if (n <= 0) return;
    int workers = thread_count();
    if (static_cast<long>(workers) > n) workers = static_cast<int>(n);
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::mutex err_mu;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        long lo = n * t / workers;
        long hi = n * (t + 1) / workers;
        pool.emplace_back([lo, hi, &fn, &err_mu, &first_error] {
            try {
                for (long i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                std::scoped_lock lock(err_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace hesc

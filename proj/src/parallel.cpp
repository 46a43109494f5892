#include "reslab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace reslab {

int worker_count() {
    if (const char* env = std::getenv("RESLAB_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void parallel_blocks(int blocks, const std::function<void(int)>& fn) {
    if (blocks <= 0) return;
    const int workers = std::min(blocks, worker_count());
    if (workers <= 1) {
        for (int b = 0; b < blocks; ++b) fn(b);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto drain = [&] {
        int b;
        while ((b = next.fetch_add(1)) < blocks) {
            if (failed.load()) return;
            try {
                fn(b);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers) - 1);
    for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace reslab

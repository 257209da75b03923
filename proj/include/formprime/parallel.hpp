#ifndef FORMPRIME_PARALLEL_HPP
#define FORMPRIME_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace formprime {

/* Workers pull chunk indices from a shared counter; callers merge
 * per-chunk results in index order so output stays deterministic. */
template <typename Fn>
void run_chunks(int n_chunks, int workers, Fn&& fn)
{
    if (workers < 1)
        workers = 1;
    if (workers == 1 || n_chunks <= 1) {
        for (int i = 0; i < n_chunks; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= n_chunks || failed.load())
                return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true))
                    error = std::current_exception();
                return;
            }
        }
    };
    int spawn = std::min(workers, n_chunks);
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int t = 0; t < spawn; ++t)
        pool.emplace_back(work);
    for (auto& th : pool)
        th.join();
    if (failed.load())
        std::rethrow_exception(error);
}

/* FORMPRIME_JOBS, falling back to the hardware count. */
int default_worker_count();

} // namespace formprime

#endif

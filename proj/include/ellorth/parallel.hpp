/*
   Copyright 2026 The ellorth Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELLORTH_PARALLEL_HPP
#define ELLORTH_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ellorth {

// Worker count used when a caller passes jobs <= 0.
int default_jobs();
void set_default_jobs(int jobs);

// Runs body(begin, end) over contiguous chunks of [0, n). Chunk boundaries
// depend only on n and the worker count, so reductions done per chunk and
// combined in chunk order are deterministic.
template <class Body>
void parallel_chunks(size_t n, int jobs, Body&& body) {
    if (jobs <= 0) jobs = default_jobs();
    const size_t workers = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(jobs), n / 4096 + 1));
    if (workers == 1) {
        body(size_t{0}, n, size_t{0});
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    const size_t step = (n + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
        const size_t b = w * step, e = std::min(n, b + step);
        if (b >= e) break;
        pool.emplace_back([&, b, e, w] {
            try {
                body(b, e, w);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!err) err = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

// Independent tasks 0..n-1 pulled from a shared counter.
template <class Task>
void parallel_tasks(size_t n, int jobs, Task&& task) {
    if (jobs <= 0) jobs = default_jobs();
    const size_t workers = std::max<size_t>(1, std::min<size_t>(static_cast<size_t>(jobs), n));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace ellorth

#endif

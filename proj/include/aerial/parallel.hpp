// SPDX-License-Identifier: Apache-2.0
//
// aerial: analysis and simulation of multi-layer aerial networks
// Copyright (C) 2026 The aerial authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace aerial
{

/// Worker count from AERIAL_WORKERS, else the hardware concurrency (at least 1).
int worker_count();

namespace detail
{
inline thread_local bool inside_worker = false;
}

/// Calls f(i) for i in [0, n) on up to worker_count() threads. Results must be
/// written to per-index slots by f. The exception of the lowest failing index
/// is rethrown after all workers finish.
template <class F>
void parallel_for(int n, F && f)
{
    // nested calls run inline so the pool never oversubscribes
    const int workers = detail::inside_worker ? 1 : std::min(worker_count(), n);
    if (workers <= 1)
    {
        for (int i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    auto run = [&] {
        const bool outer = detail::inside_worker;
        detail::inside_worker = true;
        for (int i = next++; i < n; i = next++)
        {
            try
            {
                f(i);
            }
            catch (...)
            {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        detail::inside_worker = outer;
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back(run);
    run();
    for (auto & t : pool)
        t.join();
    for (auto & e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace aerial

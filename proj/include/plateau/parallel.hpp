// Copyright 2026 The plateau-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace plateau {

// 0 means "auto": PLATEAU_LAB_WORKERS if set, else the hardware thread count.
int resolve_workers(int requested);

// out[i] = f(i) for i in [0, count). Work is split into contiguous chunks;
// results never depend on the worker count. The first exception (by index)
// is rethrown after all workers finish.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, int workers, F&& f) {
  std::vector<T> out(count);
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(std::size_t(resolve_workers(workers)), count));
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::size_t> error_index(w, count);
  auto run = [&](std::size_t worker) {
    const std::size_t begin = count * worker / w;
    const std::size_t end = count * (worker + 1) / w;
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[worker] = std::current_exception();
        error_index[worker] = i;
        return;
      }
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t k = 1; k < w; ++k) threads.emplace_back(run, k);
    run(0);
    for (auto& t : threads) t.join();
  }
  for (std::size_t k = 0; k < w; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
  }
  return out;
}

// Pairwise (tree) sum in a fixed order.
template <class T, class Get>
auto tree_sum(std::size_t begin, std::size_t end, const Get& get) -> T {
  if (end - begin <= 8) {
    T acc = get(begin);
    for (std::size_t i = begin + 1; i < end; ++i) acc = acc + get(i);
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  return tree_sum<T>(begin, mid, get) + tree_sum<T>(mid, end, get);
}

template <class T>
T tree_sum(const std::vector<T>& v) {
  if (v.empty()) return T{};
  return tree_sum<T>(0, v.size(), [&](std::size_t i) { return v[i]; });
}

}  // namespace plateau

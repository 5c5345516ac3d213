#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace descent {

/// Worker count: DESCENT_KIT_THREADS if set and positive, else the hardware
/// concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("DESCENT_KIT_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<std::size_t>(n);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// f applied to every input; results are in input order whatever the
/// scheduling. The first exception (by input position) is rethrown.
template <class T, class F>
auto parallel_map(const std::vector<T>& inputs, F f, std::size_t workers = worker_count())
    -> std::vector<decltype(f(inputs.front()))> {
  using R = decltype(f(inputs.front()));
  std::vector<std::optional<R>> slots(inputs.size());
  std::vector<std::exception_ptr> errors(inputs.size());
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        slots[i].emplace(f(inputs[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  workers = std::min(workers, inputs.size());
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  std::vector<R> out;
  out.reserve(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

}  // namespace descent

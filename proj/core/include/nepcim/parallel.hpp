#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace nepcim {

template <typename R>
struct TaskOutcome {
  std::optional<R> value;
  std::string error;

  bool ok() const { return value.has_value(); }
};

// Applies fn to every item and returns the outcomes in input order. Items are
// split into contiguous index ranges, one per worker, so the work assignment
// (and with a deterministic fn, every result bit) is independent of timing.
// A throwing item records its message in its slot; the rest still run.
template <typename Item, typename Fn>
auto parallel_map(const std::vector<Item>& items, Fn fn, int workers)
    -> std::vector<TaskOutcome<std::invoke_result_t<Fn, const Item&>>> {
  using R = std::invoke_result_t<Fn, const Item&>;
  std::vector<TaskOutcome<R>> out(items.size());

  auto run_range = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        out[i].value = fn(items[i]);
      } catch (const std::exception& e) {
        out[i].error = e.what();
      } catch (...) {
        out[i].error = "unknown error";
      }
    }
  };

  std::size_t n = items.size();
  std::size_t pool = std::min<std::size_t>(std::max(workers, 1), n);
  if (pool <= 1) {
    run_range(0, n);
    return out;
  }

  std::vector<std::thread> threads;
  threads.reserve(pool);
  std::size_t chunk = n / pool;
  std::size_t rem = n % pool;
  std::size_t begin = 0;
  for (std::size_t t = 0; t < pool; ++t) {
    std::size_t end = begin + chunk + (t < rem ? 1 : 0);
    threads.emplace_back(run_range, begin, end);
    begin = end;
  }
  for (auto& th : threads) th.join();
  return out;
}

}  // namespace nepcim

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

namespace bary {

struct WorstSample {
  std::size_t index = 0;
  double violation = 0.0;
};

// Max of violation(i) over [0, count), ties broken by the lowest index, NaN
// ranked above everything. Work is split into contiguous chunks over at most
// `threads` threads; the answer does not depend on the thread count. An
// exception from the lowest failing chunk is rethrown.
template <class ViolationFn>
WorstSample reduce_worst(std::size_t count, unsigned threads, ViolationFn&& violation) {
  auto rank = [](double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; };
  auto scan = [&](std::size_t begin, std::size_t end) {
    WorstSample worst{begin, -1.0};
    for (std::size_t i = begin; i < end; ++i) {
      const double v = violation(i);
      if (rank(v) > rank(worst.violation)) worst = {i, std::isnan(v) ? std::numeric_limits<double>::infinity() : v};
    }
    return worst;
  };

  if (count == 0) return {};
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, count);
  if (workers == 1) return scan(0, count);

  std::vector<WorstSample> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          partial[w] = scan(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  WorstSample worst = partial.front();
  for (std::size_t w = 1; w < workers; ++w) {
    if (partial[w].violation > worst.violation) worst = partial[w];
  }
  return worst;
}

}  // namespace bary

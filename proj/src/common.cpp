#include "weightlab/common.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace weightlab {

namespace {
std::atomic<unsigned> g_threads{1};
}

double norm(const Vec& v, int n) {
  return n == 1 ? std::abs(v[0]) : std::hypot(v[0], v[1]);
}

bool is_power_of_two(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) return false;
  int exponent = 0;
  return std::frexp(value, &exponent) == 0.5;
}

bool is_power_of_two(std::size_t value) {
  return value != 0 && (value & (value - 1)) == 0;
}

void set_thread_count(unsigned threads) { g_threads = threads == 0 ? 1 : threads; }

unsigned thread_count() { return g_threads; }

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(g_threads.load(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace weightlab

#include "forminv/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "forminv/errors.hpp"

namespace forminv {

namespace {
std::atomic<int> g_parallelism{1};
}

int parallelism() { return g_parallelism.load(); }

void set_parallelism(int n) {
  if (n < 1) throw DomainError("parallelism must be at least 1");
  g_parallelism.store(n);
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  int workers = std::min(parallelism(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace forminv

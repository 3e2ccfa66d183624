#include "pprtopk/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pprtopk {

int resolve_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("thread count must be >= 0");
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PPRTOPK_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
      // fall through to the hardware count on unparsable values
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::uint64_t total, int threads,
                     const std::function<void(int, std::uint64_t,
                                              std::uint64_t)>& body) {
  if (total == 0) return;
  int workers = std::max(1, threads);
  if (static_cast<std::uint64_t>(workers) > total)
    workers = static_cast<int>(total);

  if (workers == 1) {
    body(0, 0, total);
    return;
  }

  const std::uint64_t base = total / workers;
  const std::uint64_t extra = total % workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::uint64_t begin = 0;
  for (int w = 0; w < workers; ++w) {
    std::uint64_t len = base + (static_cast<std::uint64_t>(w) < extra ? 1 : 0);
    std::uint64_t end = begin + len;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
    begin = end;
  }
  for (auto& t : pool) t.join();
}

}  // namespace pprtopk

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include "hilbperv/report.hpp"

namespace hilbperv::detail {

/// Splits [0, count) into chunks, runs body(begin, end, report) on up to jobs threads and merges the
/// per-chunk reports in chunk order. The first exception thrown by any chunk is rethrown.
template <class Body>
void parallel_chunks(std::uint64_t count, unsigned jobs, CheckReport& into, Body&& body) {
  if (count == 0) return;
  jobs = std::max(1u, jobs);
  const std::uint64_t chunks = std::min<std::uint64_t>(count, jobs == 1 ? 1 : std::uint64_t{jobs} * 8);
  std::vector<CheckReport> parts(chunks, CheckReport(into.suite()));
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      std::uint64_t begin = count * c / chunks;
      std::uint64_t end = count * (c + 1) / chunks;
      try {
        body(begin, end, parts[c]);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::uint64_t>(jobs, chunks); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& p : parts) into.merge(p);
}

}  // namespace hilbperv::detail

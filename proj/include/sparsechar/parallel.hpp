#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace sparsechar {

/// Splits [0, total) into at most `threads` contiguous chunks and runs
/// fn(begin, end) on each, one thread per chunk. Results come back in chunk
/// order, so any order-sensitive merge stays deterministic. The first
/// exception thrown by a worker is rethrown here.
template <class Fn>
auto run_chunks(std::uint64_t total, unsigned threads, Fn fn) {
  using R = decltype(fn(std::uint64_t{}, std::uint64_t{}));
  const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(threads, total));
  std::vector<std::uint64_t> bounds(chunks + 1);
  for (std::uint64_t i = 0; i <= chunks; ++i) bounds[i] = total / chunks * i + std::min(i, total % chunks);
  if (chunks == 1) return std::vector<R>{fn(0, total)};

  std::vector<std::optional<R>> slots(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::uint64_t i = 0; i < chunks; ++i) {
    pool.emplace_back([&, i] {
      try {
        slots[i].emplace(fn(bounds[i], bounds[i + 1]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(chunks);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace sparsechar

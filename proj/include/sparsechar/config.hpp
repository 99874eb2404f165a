#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>

namespace sparsechar {

/// Per-feature desk-scale limits. All sizes are field orders q^r.
struct Guards {
  std::uint64_t max_field_order = std::uint64_t{1} << 32;
  // Fields up to this order get exp/log multiplication tables.
  std::uint64_t max_arith_table = std::uint64_t{1} << 20;
  // Discrete-log tables for multiplicative characters.
  std::uint64_t max_log_table = std::uint64_t{1} << 24;
  // Exhaustive (omega, alpha) membership oracle.
  std::uint64_t max_oracle = std::uint64_t{1} << 12;
  // Exhaustive omega loop of the rational-function criterion.
  std::uint64_t max_exhaustive = std::uint64_t{1} << 16;
  // Number of summation points a single sum may visit.
  std::uint64_t max_enumeration = std::uint64_t{1} << 32;
};

inline constexpr const char* kThreadsEnv = "SPARSECHARSUM_THREADS";

/// Worker count: SPARSECHARSUM_THREADS when set to a positive integer,
/// otherwise the available hardware parallelism.
inline unsigned default_threads() {
  if (const char* env = std::getenv(kThreadsEnv)) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 4096) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace sparsechar

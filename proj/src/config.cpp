#include "bosesep/config.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "bosesep/error.hpp"

namespace bosesep {

namespace {

std::int64_t initial_limit() {
  if (const char* env = std::getenv("BOSESEP_MAX_DIM")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
      // fall through to default
    }
  }
  return 1'000'000;
}

std::atomic<std::int64_t>& limit_slot() {
  static std::atomic<std::int64_t> limit{initial_limit()};
  return limit;
}

}  // namespace

std::int64_t size_limit() { return limit_slot().load(); }

void set_size_limit(std::int64_t max_entries) {
  if (max_entries <= 0) fail(ErrorCode::SizeLimit, "size limit must be positive");
  limit_slot().store(max_entries);
}

void ensure_within_size_limit(std::int64_t rows, std::int64_t cols) {
  if (rows < 0 || cols < 0)
    fail(ErrorCode::ShapeError, "negative dimensions");
  const std::int64_t limit = size_limit();
  if (rows != 0 && cols > limit / rows)
    fail(ErrorCode::SizeLimit,
         std::to_string(rows) + "x" + std::to_string(cols) +
             " exceeds the configured limit of " + std::to_string(limit) +
             " entries (BOSESEP_MAX_DIM)");
}

}  // namespace bosesep

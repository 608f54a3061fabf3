// config.hpp
// Process-wide guard against runaway allocations. Dense matrices are capped
// at size_limit() entries (default 1e6, i.e. ~1000x1000 complex doubles).
// Override with the BOSESEP_MAX_DIM environment variable or set_size_limit().

#pragma once

#include <cstdint>

namespace bosesep {

std::int64_t size_limit();
void set_size_limit(std::int64_t max_entries);

// Throws Error{SizeLimit} if rows*cols exceeds the configured limit.
void ensure_within_size_limit(std::int64_t rows, std::int64_t cols);

}  // namespace bosesep

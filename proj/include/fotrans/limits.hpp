#pragma once

#include <cstdint>

namespace fotrans {

/// Default coloring budget of exhaustive transduction searches (2^20 colorings).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;

/// Vertex cap for an exact search. The environment variable FOTRANS_MAX_VERTICES,
/// when set to a positive integer, replaces every default cap.
int vertex_limit(int default_limit);

/// Throws SizeLimitExceeded when `size` exceeds vertex_limit(default_limit).
void check_vertex_limit(const char* what, int size, int default_limit);

}  // namespace fotrans

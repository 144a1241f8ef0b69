#include "fotrans/limits.hpp"

#include <cstdlib>
#include <string>

#include "fotrans/errors.hpp"

namespace fotrans {

int vertex_limit(int default_limit) {
    if (const char* env = std::getenv("FOTRANS_MAX_VERTICES")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0 && value < 64) return static_cast<int>(value);
    }
    return default_limit;
}

void check_vertex_limit(const char* what, int size, int default_limit) {
    int limit = vertex_limit(default_limit);
    if (size > limit) throw SizeLimitExceeded(what, size, limit);
}

}  // namespace fotrans

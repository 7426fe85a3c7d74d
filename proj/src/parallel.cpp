#include "circle_cs/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

#include <omp.h>

namespace circle_cs {

int thread_cap_from_env() {
    const char* raw = std::getenv("CIRCLE_CS_THREADS");
    if (raw == nullptr) return 0;
    const std::string_view text(raw);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value < 0) return 0;
    return value;
}

void apply_thread_cap_from_env() {
    const int cap = thread_cap_from_env();
    if (cap > 0) omp_set_num_threads(cap);
}

int max_threads() { return omp_get_max_threads(); }

} // namespace circle_cs

#pragma once

namespace circle_cs {

/// Thread cap read from CIRCLE_CS_THREADS; 0 (or unset, or unparsable) means
/// let the runtime decide.
int thread_cap_from_env();

/// Applies thread_cap_from_env() to the OpenMP runtime. No-op when 0.
void apply_thread_cap_from_env();

/// Threads the next parallel region may use.
int max_threads();

} // namespace circle_cs

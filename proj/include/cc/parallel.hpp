#pragma once

namespace cc::parallel {

// Worker cap: min(OpenMP max threads, CC_THREADS env var when set). Always >= 1.
int thread_count();

}  // namespace cc::parallel

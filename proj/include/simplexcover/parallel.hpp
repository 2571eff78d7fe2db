#pragma once

namespace simplexcover {

/// Name of the environment variable holding the default worker count.
inline constexpr const char* kThreadsEnv = "SIMPLEXCOVER_THREADS";

/// `requested` if positive, else the environment default, else the OpenMP
/// default (available parallelism).
int resolve_threads(int requested);

}  // namespace simplexcover

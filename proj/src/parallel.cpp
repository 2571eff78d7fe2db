#include "simplexcover/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace simplexcover {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv(kThreadsEnv)) {
    try {
      const int value = std::stoi(env);
      if (value > 0) return value;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace simplexcover

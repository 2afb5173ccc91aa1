#include "qf/parallel.hpp"

#include <omp.h>

#include <cstdlib>

namespace qf {

int thread_count() {
  if (const char* env = std::getenv("QF_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

}  // namespace qf

#include "cms/parallel.hpp"

#include <cstdlib>
#include <string>

namespace cms {

void set_worker_count(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int worker_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void configure_workers_from_env() {
  const char* v = std::getenv("CMS_THREADS");
  if (v == nullptr) return;
  try {
    set_worker_count(std::stoi(v));
  } catch (const std::exception&) {
  }
}

}  // namespace cms

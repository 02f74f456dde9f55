#include "bruhat/exec.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#ifdef BRUHAT_HAS_OPENMP
#include <omp.h>
#endif

namespace bruhat {

namespace {

std::atomic<int> configured{0};

int default_threads() {
  if (const char* env = std::getenv("BRUHAT_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
#ifdef BRUHAT_HAS_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace

int thread_count() {
  const int v = configured.load();
  return v > 0 ? v : default_threads();
}

void set_thread_count(int threads) { configured.store(threads > 0 ? threads : 0); }

bool openmp_enabled() noexcept {
#ifdef BRUHAT_HAS_OPENMP
  return true;
#else
  return false;
#endif
}

}  // namespace bruhat

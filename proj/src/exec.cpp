#include "hydrolim/exec.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace hydrolim::exec {

namespace {
std::atomic<Backend> g_backend{Backend::OpenMP};
}

Backend backend() noexcept { return g_backend.load(std::memory_order_relaxed); }

void set_backend(Backend b) noexcept {
  g_backend.store(b, std::memory_order_relaxed);
}

int apply_thread_env() {
  if (const char* env = std::getenv("HYDROLIM_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap > 0 && cap < omp_get_max_threads()) omp_set_num_threads(cap);
    } catch (const std::exception&) {
      // ignored: a malformed value leaves the OpenMP default in place
    }
  }
  return omp_get_max_threads();
}

int thread_limit() { return omp_get_max_threads(); }

void set_thread_limit(int n) {
  if (n > 0) omp_set_num_threads(n);
}

}  // namespace hydrolim::exec

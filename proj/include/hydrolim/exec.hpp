#pragma once

namespace hydrolim::exec {

/// Which implementation the data-parallel kernels dispatch to. Both produce
/// bitwise identical results; Serial is the reference kept for testing.
enum class Backend { Serial, OpenMP };

Backend backend() noexcept;
void set_backend(Backend b) noexcept;

/// Restores the previous backend on scope exit.
class ScopedBackend {
 public:
  explicit ScopedBackend(Backend b) noexcept : saved_(backend()) {
    set_backend(b);
  }
  ~ScopedBackend() { set_backend(saved_); }
  ScopedBackend(const ScopedBackend&) = delete;
  ScopedBackend& operator=(const ScopedBackend&) = delete;

 private:
  Backend saved_;
};

/// Caps OpenMP threads at HYDROLIM_THREADS when that variable holds a
/// positive integer. Returns the resulting thread limit.
int apply_thread_env();

/// Thread limit for OpenMP regions started from the calling thread.
int thread_limit();
void set_thread_limit(int n);

}  // namespace hydrolim::exec

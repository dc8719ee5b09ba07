#include "hydrolim/kernels.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace hydrolim::kernels {

namespace {

// The FFTW planner is not thread-safe; execution with new arrays is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    fftw_complex* scratch = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan plan = fftw_plan_dft_1d(
        n, scratch, scratch, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (plan == nullptr) throw std::runtime_error("FFTW planning failed");
    plans_.emplace(std::make_pair(n, sign), plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

struct LineLayout {
  int length;
  int count;
  std::size_t stride;
  // start offset of line `i`
  std::size_t (*start)(const Shape3&, int);
};

std::size_t start_axis0(const Shape3&, int i) { return static_cast<std::size_t>(i); }
std::size_t start_axis1(const Shape3& s, int i) {
  const int a = i / s.n2;
  const int c = i % s.n2;
  return static_cast<std::size_t>(a) * s.n1 * s.n2 + c;
}
std::size_t start_axis2(const Shape3& s, int i) {
  return static_cast<std::size_t>(i) * s.n2;
}

LineLayout layout(const Shape3& s, int axis) {
  switch (axis) {
    case 0:
      return {s.n0, s.n1 * s.n2, static_cast<std::size_t>(s.n1) * s.n2, start_axis0};
    case 1:
      return {s.n1, s.n0 * s.n2, static_cast<std::size_t>(s.n2), start_axis1};
    case 2:
      return {s.n2, s.n0 * s.n1, 1, start_axis2};
    default:
      throw std::invalid_argument("fft_lines: axis must be 0, 1 or 2");
  }
}

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void transform_line(fftw_plan plan, std::span<cplx> data, const Shape3& shape,
                    const LineLayout& lay, int line, std::vector<cplx>& buffer) {
  const std::size_t start = lay.start(shape, line);
  if (lay.stride == 1) {
    fftw_execute_dft(plan, as_fftw(&data[start]), as_fftw(&data[start]));
    return;
  }
  for (int l = 0; l < lay.length; ++l) buffer[l] = data[start + l * lay.stride];
  fftw_execute_dft(plan, as_fftw(buffer.data()), as_fftw(buffer.data()));
  for (int l = 0; l < lay.length; ++l) data[start + l * lay.stride] = buffer[l];
}

}  // namespace

namespace serial {

void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign) {
  const LineLayout lay = layout(shape, axis);
  fftw_plan plan = plan_cache().get(lay.length, sign);
  std::vector<cplx> buffer(static_cast<std::size_t>(lay.length));
  for (int line = 0; line < lay.count; ++line) {
    transform_line(plan, data, shape, lay, line, buffer);
  }
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}

}  // namespace serial

namespace omp {

void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign) {
  const LineLayout lay = layout(shape, axis);
  fftw_plan plan = plan_cache().get(lay.length, sign);
#pragma omp parallel
  {
    std::vector<cplx> buffer(static_cast<std::size_t>(lay.length));
#pragma omp for schedule(static)
    for (int line = 0; line < lay.count; ++line) {
      transform_line(plan, data, shape, lay, line, buffer);
    }
  }
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace omp

void fft_lines(std::span<cplx> data, Shape3 shape, int axis, int sign) {
  if (exec::backend() == exec::Backend::Serial) {
    serial::fft_lines(data, shape, axis, sign);
  } else {
    omp::fft_lines(data, shape, axis, sign);
  }
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  if (exec::backend() == exec::Backend::Serial) {
    serial::multiply(a, b, out);
  } else {
    omp::multiply(a, b, out);
  }
}

}  // namespace hydrolim::kernels

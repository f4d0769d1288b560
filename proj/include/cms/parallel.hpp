#pragma once

// Order-preserving map over a vector, parallel (OpenMP) and serial. Results
// land at the index of their input, so both variants return identical
// vectors. An exception thrown by any task is rethrown after the loop.

#include <exception>
#include <type_traits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cms {

// Reads CMS_THREADS once; 0 or unset leaves the OpenMP default.
void configure_workers_from_env();
void set_worker_count(int n);
int worker_count();

template <class T, class F>
auto serial_map(const std::vector<T>& in, F&& f) -> std::vector<std::invoke_result_t<F&, const T&>> {
  std::vector<std::invoke_result_t<F&, const T&>> out;
  out.reserve(in.size());
  for (const auto& x : in) out.push_back(f(x));
  return out;
}

template <class T, class F>
auto parallel_map(const std::vector<T>& in, F&& f) -> std::vector<std::invoke_result_t<F&, const T&>> {
  using R = std::invoke_result_t<F&, const T&>;
  const long n = static_cast<long>(in.size());
  std::vector<R> out(in.size());
  std::vector<std::exception_ptr> errors(in.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(in[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace cms

// Basis-key comparison kernels: a serial reference and an OpenMP version.
// Both report the first differing key in key order, so their results are
// identical for any thread count.

#include <omp.h>

#include <atomic>
#include <cstddef>
#include <exception>

#include "qembed/repmod.hpp"

namespace qembed {

EqualityResult compare_on_keys_serial(const ModuleContext& ctx, const std::vector<TensorKey>& keys,
                                      const KeyAction& lhs, const KeyAction& rhs) {
  (void)ctx;
  EqualityResult r;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    TensorVector a = lhs(keys[i]);
    TensorVector b = rhs(keys[i]);
    if (!(a == b)) {
      r.equal = false;
      r.keys_checked = i + 1;
      r.key = keys[i];
      r.lhs = std::move(a);
      r.rhs = std::move(b);
      return r;
    }
  }
  r.keys_checked = keys.size();
  return r;
}

EqualityResult compare_on_keys(const ModuleContext& ctx, const std::vector<TensorKey>& keys, const KeyAction& lhs,
                               const KeyAction& rhs) {
  const auto n = static_cast<std::ptrdiff_t>(keys.size());
  std::atomic<std::ptrdiff_t> first_bad{n};
  std::exception_ptr error;

#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // Keys past a known failure cannot change the answer.
    if (i > first_bad.load(std::memory_order_relaxed)) continue;
    try {
      if (!(lhs(keys[static_cast<std::size_t>(i)]) == rhs(keys[static_cast<std::size_t>(i)]))) {
        std::ptrdiff_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (...) {
#pragma omp critical(qembed_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  EqualityResult r;
  const std::ptrdiff_t bad = first_bad.load();
  if (bad == n) {
    r.keys_checked = keys.size();
    return r;
  }
  const TensorKey& key = keys[static_cast<std::size_t>(bad)];
  r.equal = false;
  r.keys_checked = static_cast<std::size_t>(bad) + 1;
  r.key = key;
  r.lhs = lhs(key);
  r.rhs = rhs(key);
  (void)ctx;
  return r;
}

}  // namespace qembed

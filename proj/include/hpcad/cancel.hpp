#pragma once

#include <atomic>

#include "hpcad/poly.hpp"

namespace hpcad {

class Cancelled : public Error {
 public:
  Cancelled() : Error("computation cancelled") {}
};

/// Cooperative cancellation flag polled by long-running loops.
class CancelToken {
 public:
  void cancel() { flag_.store(true, std::memory_order_relaxed); }
  bool cancelled() const { return flag_.load(std::memory_order_relaxed); }
  void check() const {
    if (cancelled()) throw Cancelled();
  }

 private:
  std::atomic<bool> flag_{false};
};

inline void check_cancel(const CancelToken* token) {
  if (token) token->check();
}

/// Installs a token for the current thread; the exact kernel polls it inside
/// its gcd and resultant loops, so a cancel also stops a single long call.
class CancelScope {
 public:
  explicit CancelScope(const CancelToken* token) : saved_(current_) { current_ = token; }
  ~CancelScope() { current_ = saved_; }
  CancelScope(const CancelScope&) = delete;
  CancelScope& operator=(const CancelScope&) = delete;

  static const CancelToken* current() { return current_; }
  static void poll() { check_cancel(current_); }

 private:
  const CancelToken* saved_;
  static inline thread_local const CancelToken* current_ = nullptr;
};

}  // namespace hpcad

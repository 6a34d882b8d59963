// Copyright 2026 The mpent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mpent {

/// Malformed or inconsistent input (dimension mismatch, bad subset, bad file).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Problem too large for the dense representation or an enumerator limit.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Largest dense amplitude vector accepted anywhere in the library.
inline constexpr std::uint64_t kMaxAmplitudes = std::uint64_t{1} << 22;

/// d^n with overflow saturation at UINT64_MAX.
inline std::uint64_t ipow(std::uint64_t d, int n) {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (d != 0 && r > UINT64_MAX / d) return UINT64_MAX;
    r *= d;
  }
  return r;
}

inline void check_capacity(int n, int d) {
  if (n < 1) throw InvalidInput("party count must be >= 1");
  if (d < 2) throw InvalidInput("local dimension must be >= 2");
  if (ipow(static_cast<std::uint64_t>(d), n) > kMaxAmplitudes)
    throw CapacityError("d^n = " + std::to_string(d) + "^" + std::to_string(n) +
                        " exceeds the 2^22 amplitude limit");
}

/// Flat-index convention shared by every module: party 0 is the most
/// significant digit, flat = sum_i j_i * d^(n-1-i).
struct Indexer {
  int n;
  int d;

  std::uint64_t stride(int party) const { return ipow(d, n - 1 - party); }
  std::uint64_t size() const { return ipow(d, n); }

  int digit(std::uint64_t flat, int party) const {
    return static_cast<int>((flat / stride(party)) % d);
  }

  std::vector<int> digits(std::uint64_t flat) const {
    std::vector<int> j(n);
    for (int i = n - 1; i >= 0; --i) {
      j[i] = static_cast<int>(flat % d);
      flat /= d;
    }
    return j;
  }

  std::uint64_t flat(const std::vector<int>& j) const {
    std::uint64_t f = 0;
    for (int i = 0; i < n; ++i) f = f * d + static_cast<std::uint64_t>(j[i]);
    return f;
  }
};

/// Worker count: MPENT_THREADS if set, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("MPENT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(i) for i in [0, count) on a small thread pool. Each index is
/// processed exactly once; callers write into per-index slots so the merge
/// order never depends on scheduling.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// log2(N!) by direct summation; exact enough for N up to ~10^6.
inline double log2_factorial(std::uint64_t n) {
  double s = 0.0;
  for (std::uint64_t k = 2; k <= n; ++k) s += std::log2(static_cast<double>(k));
  return s;
}

}  // namespace mpent

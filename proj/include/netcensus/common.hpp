#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace netcensus {

// All library failures surface as this type (or a subclass) so the CLI and
// the HTTP layer can map them to exit codes / status codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Seeded generator used for every stochastic step. mt19937_64 has a fully
// specified output sequence, unlike the std distributions, so we draw bounded
// integers ourselves to stay bit-identical across standard libraries.
using Rng = std::mt19937_64;
inline constexpr const char* kRngName = "mt19937_64";

inline std::uint64_t uniformIndex(Rng& rng, std::uint64_t bound) {
  // bound must be > 0; rejects the 2^64 mod bound lowest outputs
  const std::uint64_t threshold = (0 - bound) % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x < threshold);
  return x % bound;
}

// Uniform double in [0, 1) from the top 53 bits.
inline double uniformUnit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline unsigned defaultThreadCount() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Runs body(i) for i in [0, count) across up to `threads` workers. Work is
// handed out in contiguous stripes; callers write results by index so the
// outcome never depends on scheduling.
inline void parallelFor(std::size_t count, const std::function<void(std::size_t)>& body,
                        unsigned threads = defaultThreadCount()) {
  if (count == 0) return;
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
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

}  // namespace netcensus

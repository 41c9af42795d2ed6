#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace drp {

// Counter-based generator (splitmix64 over a keyed counter). Streams
// derived from (master seed, stream id, role) are independent of each
// other and of evaluation order, which keeps runs bit-reproducible for
// any worker count. Platform-independent by construction: no
// std::distribution is used anywhere.
class StreamRng {
 public:
  enum class Role : std::uint64_t { kInit = 1, kSample = 2, kShuffle = 3, kData = 4 };

  StreamRng() : StreamRng(0, 0, Role::kInit) {}
  StreamRng(std::uint64_t master_seed, std::uint64_t stream_id, Role role)
      : key_(mix(mix(master_seed ^ 0x7c0f0f96ec1bd5abULL) ^
                 mix(stream_id * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(role)))),
        counter_(0) {}

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // uniform in [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // standard normal via polar rejection
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("StreamRng::below: n must be > 0");
    // rejection to avoid modulo bias
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  // index distributed per the (normalized, strictly positive) weights
  int categorical(const std::vector<double>& weights) {
    double u = uniform01();
    double acc = 0.0;
    for (std::size_t t = 0; t < weights.size(); ++t) {
      acc += weights[t];
      if (u < acc) return static_cast<int>(t);
    }
    return static_cast<int>(weights.size()) - 1;  // guard roundoff at u ~ 1
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace drp

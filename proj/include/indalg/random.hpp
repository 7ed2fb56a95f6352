#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace indalg {

  // Seeded source used by every generator in the library. std::mt19937_64 is
  // fully specified by the standard; the distributions are not, so bounded
  // draws are done here to keep corpora identical across standard libraries.
  class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() {
      return engine_();
    }

    // Uniform in [0, n). Rejection sampling, n > 0.
    std::uint64_t below(std::uint64_t n) {
      std::uint64_t const limit = UINT64_MAX - UINT64_MAX % n;
      std::uint64_t       x;
      do {
        x = engine_();
      } while (x >= limit);
      return x % n;
    }

    // Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
      return lo + static_cast<std::int64_t>(
                 below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool coin() {
      return below(2) == 1;
    }

   private:
    std::mt19937_64 engine_;
  };

}  // namespace indalg

#pragma once

// The injective map h : F -> E and the binary operation
//   g(w1, w2) = z_{h(w1 w2^-1)} w2
// of the counterexample algebra on F.

#include <algorithm>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "indalg/freegroup.hpp"

namespace indalg {

  class HMap {
   public:
    // The three pins required of h:
    //   z1 z2^-1 -> z6,  z3 z2^-1 -> z8,  z1 z4^-1 -> z10.
    HMap()
        : HMap({{z(1) * z(2, -1), GenIndex(6)},
                {z(3) * z(2, -1), GenIndex(8)},
                {z(1) * z(4, -1), GenIndex(10)}}) {}

    // A finite pin table; values must be distinct positive even indices.
    explicit HMap(std::map<Word, GenIndex> pins) : pins_(std::move(pins)) {
      std::set<GenIndex> seen;
      for (auto const& [w, v] : pins_) {
        if (v < 2 || !is_even(v)) {
          throw InvalidParams("pinned h-value must be a positive even index, got "
                              + v.str());
        }
        if (!seen.insert(v).second) {
          throw InvalidParams("pinned h-values must be distinct");
        }
      }
      reserved_.assign(seen.begin(), seen.end());
    }

    std::map<Word, GenIndex> const& pins() const noexcept {
      return pins_;
    }

    // Pinned words take their pinned value; every other word w gets the
    // code(w)-th even index not used by a pin. code is injective, so h is.
    GenIndex lookup(Word const& w) const {
      if (auto it = pins_.find(w); it != pins_.end()) {
        return it->second;
      }
      return free_even(code(w));
    }

    GenIndex operator()(Word const& w) const {
      return lookup(w);
    }

    // Injective prefix-free encoding of the syllable sequence: Elias gamma of
    // the generator and of the zig-zagged exponent, behind a leading 1 bit.
    // code(1) = 0.
    static GenIndex code(Word const& w) {
      GenIndex acc = 1;
      auto     push_gamma = [&acc](GenIndex const& x) {
        auto bits = boost::multiprecision::msb(x) + 1;
        acc <<= (2 * bits - 1);
        acc |= x;
      };
      for (auto const& s : w.syllables()) {
        push_gamma(s.gen);
        GenIndex e = s.exp > 0 ? GenIndex(2 * s.exp - 1) : GenIndex(-2 * s.exp);
        push_gamma(e);
      }
      return acc - 1;
    }

    // n-th (0-based) positive even index outside the pinned values.
    GenIndex free_even(GenIndex const& n) const {
      GenIndex candidate = 2 * (n + 1);
      for (auto const& r : reserved_) {
        if (r <= candidate) {
          candidate += 2;
        } else {
          break;
        }
      }
      return candidate;
    }

   private:
    std::map<Word, GenIndex> pins_;
    std::vector<GenIndex>    reserved_;  // sorted pinned values
  };

  inline GenIndex h_lookup(HMap const& h, Word const& w) {
    return h.lookup(w);
  }

  inline Word g_apply(HMap const& h, Word const& w1, Word const& w2) {
    return z(h.lookup(w1 * w2.inverse())) * w2;
  }

}  // namespace indalg

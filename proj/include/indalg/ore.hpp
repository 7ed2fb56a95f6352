#pragma once

// Bounded Ore-condition search on small presented monoids, and the constant
// isomorphism check (CI).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "indalg/error.hpp"

namespace indalg {

  // A monoid given by letters and a normal-form function. Built-ins:
  //   posint: (Z+, *) generated by the primes 2, 3, 5, letters commute;
  //   free2:  the free monoid on {a, b}.
  class PresentedMonoid {
   public:
    using Word = std::vector<std::size_t>;

    PresentedMonoid(std::string name, std::vector<std::string> letters,
                    bool commutative)
        : name_(std::move(name)), letters_(std::move(letters)),
          commutative_(commutative) {}

    static PresentedMonoid posint() {
      return {"posint", {"2", "3", "5"}, true};
    }
    static PresentedMonoid free2() {
      return {"free2", {"a", "b"}, false};
    }
    static PresentedMonoid by_name(std::string const& name) {
      if (name == "posint") {
        return posint();
      }
      if (name == "free2") {
        return free2();
      }
      throw InvalidParams("unknown monoid '" + name + "'");
    }

    std::string const& name() const noexcept {
      return name_;
    }
    bool is_free() const noexcept {
      return !commutative_;
    }
    std::size_t letter_count() const noexcept {
      return letters_.size();
    }

    Word normal_form(Word w) const {
      if (commutative_) {
        std::sort(w.begin(), w.end());
      }
      return w;
    }

    Word mul(Word const& x, Word const& y) const {
      Word w = x;
      w.insert(w.end(), y.begin(), y.end());
      return normal_form(std::move(w));
    }

    std::string to_string(Word const& w) const {
      if (w.empty()) {
        return "1";
      }
      std::string s;
      for (std::size_t k = 0; k < w.size(); ++k) {
        if (k != 0 && commutative_) {
          s += '*';
        }
        s += letters_[w[k]];
      }
      return s;
    }

    // Distinct elements represented by words of length <= len, ordered by
    // length and then lexicographically.
    std::vector<Word> elements(std::size_t len) const {
      std::set<Word>    seen;
      std::vector<Word> out;
      std::vector<Word> layer{Word{}};
      for (std::size_t l = 0; l <= len; ++l) {
        std::vector<Word> next;
        for (auto const& w : layer) {
          auto nf = normal_form(w);
          if (seen.insert(nf).second) {
            out.push_back(nf);
          }
          if (l < len) {
            for (std::size_t c = 0; c < letters_.size(); ++c) {
              Word x = w;
              x.push_back(c);
              next.push_back(std::move(x));
            }
          }
        }
        layer = std::move(next);
      }
      return out;
    }

   private:
    std::string              name_;
    std::vector<std::string> letters_;
    bool                     commutative_;
  };

  enum class OreSide { left, right };
  enum class OreStatus { holds, fails, inconclusive };

  inline std::string to_string(OreStatus s) {
    switch (s) {
      case OreStatus::holds:
        return "holds";
      case OreStatus::fails:
        return "fails";
      case OreStatus::inconclusive:
        return "inconclusive";
    }
    return "?";
  }

  struct OreResult {
    OreStatus   status = OreStatus::holds;
    std::size_t pairs  = 0;  // pairs examined
    // For fails / inconclusive: the first pair without a common multiple.
    std::string a, b;
    std::string certificate;
  };

  // For every pair (a, b) of nonidentity elements of length <= depth, looks
  // for u, v of length <= depth with u a = v b (left) or a u = b v (right).
  // Only the free monoid has an impossibility certificate: when neither of
  // a, b is a suffix (left) or prefix (right) of the other, u a and v b
  // differ at the last (first) position where a and b differ.
  inline OreResult ore_check(PresentedMonoid const& m, OreSide side, std::size_t depth) {
    if (depth < 1) {
      throw InvalidParams("depth must be >= 1");
    }
    using Word = PresentedMonoid::Word;
    auto elems = m.elements(depth);
    auto prod  = [&](Word const& x, Word const& y) {
      return side == OreSide::left ? m.mul(x, y) : m.mul(y, x);
    };
    OreResult r;
    for (auto const& a : elems) {
      if (a.empty()) {
        continue;
      }
      std::set<Word> left_multiples;
      for (auto const& u : elems) {
        left_multiples.insert(prod(u, a));
      }
      for (auto const& b : elems) {
        if (b.empty()) {
          continue;
        }
        ++r.pairs;
        bool found = std::any_of(elems.begin(), elems.end(), [&](Word const& v) {
          return left_multiples.contains(prod(v, b));
        });
        if (found) {
          continue;
        }
        r.a = m.to_string(a);
        r.b = m.to_string(b);
        if (m.is_free()) {
          auto ends_with = [&](Word const& x, Word const& y) {
            if (y.size() > x.size()) {
              return false;
            }
            return side == OreSide::left
                       ? std::equal(y.rbegin(), y.rend(), x.rbegin())
                       : std::equal(y.begin(), y.end(), x.begin());
          };
          if (!ends_with(a, b) && !ends_with(b, a)) {
            r.status = OreStatus::fails;
            if (side == OreSide::left) {
              r.certificate = "u" + r.a + " ends in " + r.a + ", v" + r.b
                              + " ends in " + r.b
                              + ", and neither is a suffix of the other";
            } else {
              r.certificate = r.a + "u starts with " + r.a + ", " + r.b
                              + "v starts with " + r.b
                              + ", and neither is a prefix of the other";
            }
            return r;
          }
        }
        r.status = OreStatus::inconclusive;
        return r;
      }
    }
    return r;
  }

  // ---------------------------------------------------------------------
  // Constant isomorphism property

  // A finite (or truncated) constant subalgebra with named translations from
  // T acting on it.
  struct ConstantAction {
    std::string                                                         name;
    std::vector<std::int64_t>                                           constants;
    std::vector<std::pair<std::string, std::function<std::int64_t(std::int64_t)>>> translations;

    // Z^n: <emptyset> = {0}, T = nonzero scalars.
    static ConstantAction matrix_backend() {
      ConstantAction c{"matrix", {0}, {}};
      for (std::int64_t l : {-3, -2, -1, 1, 2, 3}) {
        c.translations.push_back(
            {std::to_string(l) + "*x", [l](std::int64_t x) { return l * x; }});
      }
      return c;
    }

    // Free acts have no constants.
    static ConstantAction act_backend() {
      ConstantAction c{"act", {}, {}};
      for (std::int64_t k : {0, 1, 2, 3}) {
        c.translations.push_back(
            {"t^" + std::to_string(k), [k](std::int64_t x) { return x + k; }});
      }
      return c;
    }

    // N truncated at 100 with a(x) = x + 1: 0 is never reached.
    static ConstantAction mock() {
      ConstantAction c{"mock", {}, {}};
      for (std::int64_t x = 0; x <= 100; ++x) {
        c.constants.push_back(x);
      }
      c.translations.push_back({"x+1", [](std::int64_t x) { return x + 1; }});
      return c;
    }

    static ConstantAction by_name(std::string const& name) {
      if (name == "matrix") {
        return matrix_backend();
      }
      if (name == "act") {
        return act_backend();
      }
      if (name == "mock") {
        return mock();
      }
      throw InvalidParams("unknown CI backend '" + name + "'");
    }
  };

  struct CiResult {
    bool         holds = true;
    std::string  translation;  // on failure
    std::int64_t unreached = 0;
  };

  // Every translation must restrict to a surjection of the constants.
  inline CiResult check_ci(ConstantAction const& c) {
    std::set<std::int64_t> consts(c.constants.begin(), c.constants.end());
    for (auto const& [name, f] : c.translations) {
      std::set<std::int64_t> image;
      for (auto x : c.constants) {
        image.insert(f(x));
      }
      for (auto x : c.constants) {
        if (!image.contains(x)) {
          return {false, name, x};
        }
      }
    }
    return {};
  }

}  // namespace indalg

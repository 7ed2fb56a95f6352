#pragma once

// Exact arithmetic in the free group F(Z) on generators z1, z2, ...
//
// Words are stored in run-length (syllable) form and are always fully
// reduced. Generator indices are arbitrary precision: the operation g of the
// counterexample algebra produces generators whose index encodes a whole word.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "indalg/error.hpp"
#include "indalg/random.hpp"

namespace indalg {

  using GenIndex = boost::multiprecision::cpp_int;
  using Exponent = std::int64_t;

  struct Syllable {
    GenIndex gen;
    Exponent exp;

    friend bool operator==(Syllable const&, Syllable const&) = default;
  };

  class Word;
  Word reduce(std::span<Syllable const> raw);

  class Word {
   public:
    // The identity 1.
    Word() = default;

    static Word generator(GenIndex const& i, Exponent e = 1) {
      if (i < 1) {
        throw InvalidParams("generator index must be positive");
      }
      Word w;
      if (e != 0) {
        w.syl_.push_back({i, e});
      }
      return w;
    }

    std::span<Syllable const> syllables() const noexcept {
      return syl_;
    }

    bool is_identity() const noexcept {
      return syl_.empty();
    }

    // Number of letters of the normal form.
    std::uint64_t length() const noexcept {
      std::uint64_t n = 0;
      for (auto const& s : syl_) {
        n += static_cast<std::uint64_t>(s.exp < 0 ? -s.exp : s.exp);
      }
      return n;
    }

    Word inverse() const {
      Word w;
      w.syl_.reserve(syl_.size());
      for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) {
        w.syl_.push_back({it->gen, -it->exp});
      }
      return w;
    }

    // Product in F with cancellation at the boundary only; both operands are
    // reduced so nothing else can cancel.
    friend Word operator*(Word const& u, Word const& v) {
      Word        w = u;
      std::size_t k = 0;
      while (k < v.syl_.size() && !w.syl_.empty()
             && w.syl_.back().gen == v.syl_[k].gen) {
        Exponent e = w.syl_.back().exp + v.syl_[k].exp;
        if (e == 0) {
          w.syl_.pop_back();
          ++k;
        } else {
          w.syl_.back().exp = e;
          ++k;
          break;
        }
      }
      w.syl_.insert(w.syl_.end(), v.syl_.begin() + k, v.syl_.end());
      return w;
    }

    Word& operator*=(Word const& v) {
      return *this = *this * v;
    }

    // Non-identity with every exponent positive: membership of F+.
    bool is_positive() const noexcept {
      return !syl_.empty()
             && std::all_of(syl_.begin(), syl_.end(), [](Syllable const& s) {
                  return s.exp > 0;
                });
    }

    std::set<GenIndex> gen_content() const {
      std::set<GenIndex> out;
      for (auto const& s : syl_) {
        out.insert(s.gen);
      }
      return out;
    }

    bool has_positive_occurrence(GenIndex const& i) const noexcept {
      return std::any_of(syl_.begin(), syl_.end(), [&](Syllable const& s) {
        return s.gen == i && s.exp > 0;
      });
    }

    friend bool operator==(Word const&, Word const&) = default;

    // Graded length-lex on the letter expansion, letters ordered
    // z1 < z1^-1 < z2 < z2^-1 < ...
    friend std::strong_ordering operator<=>(Word const& u, Word const& v) {
      if (auto c = u.length() <=> v.length(); c != 0) {
        return c;
      }
      std::size_t iu = 0, iv = 0;
      Exponent    ru = 0, rv = 0;  // letters left in the current syllable
      while (iu < u.syl_.size() && iv < v.syl_.size()) {
        auto const& su = u.syl_[iu];
        auto const& sv = v.syl_[iv];
        if (ru == 0) {
          ru = su.exp < 0 ? -su.exp : su.exp;
        }
        if (rv == 0) {
          rv = sv.exp < 0 ? -sv.exp : sv.exp;
        }
        if (su.gen != sv.gen) {
          return su.gen < sv.gen ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
        }
        bool nu = su.exp < 0, nv = sv.exp < 0;
        if (nu != nv) {
          return nu ? std::strong_ordering::greater
                    : std::strong_ordering::less;
        }
        Exponent step = std::min(ru, rv);
        ru -= step;
        rv -= step;
        if (ru == 0) {
          ++iu;
        }
        if (rv == 0) {
          ++iv;
        }
      }
      return std::strong_ordering::equal;
    }

    // `1`, or syllables `z<i>` / `z<i>^<e>` joined by `*`.
    std::string to_string() const {
      if (syl_.empty()) {
        return "1";
      }
      std::string out;
      for (std::size_t k = 0; k < syl_.size(); ++k) {
        if (k != 0) {
          out += '*';
        }
        out += 'z';
        out += syl_[k].gen.str();
        if (syl_[k].exp != 1) {
          out += '^';
          out += std::to_string(syl_[k].exp);
        }
      }
      return out;
    }

    static Word parse(std::string_view text);

   private:
    friend Word reduce(std::span<Syllable const> raw);
    std::vector<Syllable> syl_;
  };

  // Free reduction of an arbitrary syllable list (zero exponents allowed).
  inline Word reduce(std::span<Syllable const> raw) {
    Word w;
    for (auto const& s : raw) {
      if (s.gen < 1) {
        throw InvalidParams("generator index must be positive");
      }
      if (s.exp == 0) {
        continue;
      }
      if (!w.syl_.empty() && w.syl_.back().gen == s.gen) {
        Exponent e = w.syl_.back().exp + s.exp;
        if (e == 0) {
          w.syl_.pop_back();
        } else {
          w.syl_.back().exp = e;
        }
      } else {
        w.syl_.push_back(s);
      }
    }
    return w;
  }

  inline Word reduce(std::vector<Syllable> const& raw) {
    return reduce(std::span<Syllable const>(raw));
  }

  inline Word mul(Word const& u, Word const& v) {
    return u * v;
  }

  inline Word inv(Word const& u) {
    return u.inverse();
  }

  inline bool is_positive(Word const& u) {
    return u.is_positive();
  }

  inline std::set<GenIndex> gen_content(Word const& u) {
    return u.gen_content();
  }

  inline Word z(GenIndex const& i, Exponent e = 1) {
    return Word::generator(i, e);
  }

  inline bool is_even(GenIndex const& i) {
    return (i & 1) == 0;
  }

  inline Word Word::parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
      }
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
      }
      return s;
    };
    auto is_digits = [](std::string_view s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
        return c >= '0' && c <= '9';
      });
    };
    text = trim(text);
    if (text == "1") {
      return Word();
    }
    if (text.empty()) {
      throw ParseError("empty word");
    }
    std::vector<Syllable> raw;
    while (true) {
      auto             star = text.find('*');
      std::string_view part = trim(text.substr(0, star));
      if (part.size() < 2 || part.front() != 'z') {
        throw ParseError("bad syllable '" + std::string(part) + "'");
      }
      part.remove_prefix(1);
      auto             caret = part.find('^');
      std::string_view idx   = part.substr(0, caret);
      if (!is_digits(idx)) {
        throw ParseError("bad generator index '" + std::string(idx) + "'");
      }
      GenIndex gen{std::string(idx)};
      if (gen < 1) {
        throw ParseError("generator index must be positive");
      }
      Exponent exp = 1;
      if (caret != std::string_view::npos) {
        std::string_view e   = part.substr(caret + 1);
        bool             neg = !e.empty() && e.front() == '-';
        if (neg) {
          e.remove_prefix(1);
        }
        if (!is_digits(e) || e.size() > 18) {
          throw ParseError("bad exponent in '" + std::string(text) + "'");
        }
        exp = std::stoll(std::string(e));
        if (neg) {
          exp = -exp;
        }
        if (exp == 0) {
          throw ParseError("exponent 0 is not allowed");
        }
      }
      raw.push_back({std::move(gen), exp});
      if (star == std::string_view::npos) {
        break;
      }
      text = text.substr(star + 1);
    }
    return reduce(raw);
  }

  // Seeded words for property tests and sample-based checks.
  inline Word random_word(Rng& rng, std::size_t max_syllables, unsigned max_gen,
                          Exponent max_exp = 2) {
    std::size_t           len = rng.below(max_syllables + 1);
    std::vector<Syllable> raw;
    for (std::size_t k = 0; k < len; ++k) {
      Exponent e = rng.range(1, max_exp);
      raw.push_back({GenIndex(rng.range(1, max_gen)), rng.coin() ? e : -e});
    }
    return reduce(raw);
  }

  inline Word random_positive_word(Rng& rng, std::size_t max_syllables,
                                   unsigned max_gen, Exponent max_exp = 2) {
    std::size_t           len = 1 + rng.below(max_syllables);
    std::vector<Syllable> raw;
    for (std::size_t k = 0; k < len; ++k) {
      raw.push_back({GenIndex(rng.range(1, max_gen)), rng.range(1, max_exp)});
    }
    return reduce(raw);
  }

}  // namespace indalg

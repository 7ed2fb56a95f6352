#pragma once

// Terms over the language {nu_c (c in F), g} with variables x1, x2, ...

#include <algorithm>
#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "indalg/error.hpp"
#include "indalg/freegroup.hpp"
#include "indalg/hmap.hpp"
#include "indalg/random.hpp"

namespace indalg {

  // a(t): largest variable index; star: index of the right-most variable;
  // content: generators occurring in the nu-coefficients.
  struct TermMeta {
    std::size_t        a;
    std::size_t        star;
    std::set<GenIndex> content;

    friend bool operator==(TermMeta const&, TermMeta const&) = default;
  };

  class Term {
   public:
    struct Var {
      std::size_t index;
    };
    struct Nu {
      Word                        coeff;
      std::shared_ptr<Term const> child;
    };
    struct G {
      std::shared_ptr<Term const> left;
      std::shared_ptr<Term const> right;
    };
    using Node = std::variant<Var, Nu, G>;

    static Term var(std::size_t i) {
      if (i < 1) {
        throw InvalidParams("variable index must be >= 1");
      }
      Term t(Var{i});
      t.meta_  = {i, i, {}};
      t.depth_ = 1;
      return t;
    }

    static Term nu(Word c, Term const& s) {
      TermMeta m = s.meta_;
      for (auto const& syl : c.syllables()) {
        m.content.insert(syl.gen);
      }
      Term t(Nu{std::move(c), std::make_shared<Term const>(s)});
      t.meta_  = std::move(m);
      t.depth_ = s.depth_ + 1;
      return t;
    }

    static Term g(Term const& l, Term const& r) {
      TermMeta m{std::max(l.meta_.a, r.meta_.a), r.meta_.star, l.meta_.content};
      m.content.insert(r.meta_.content.begin(), r.meta_.content.end());
      Term t(G{std::make_shared<Term const>(l), std::make_shared<Term const>(r)});
      t.meta_  = std::move(m);
      t.depth_ = 1 + std::max(l.depth_, r.depth_);
      return t;
    }

    Node const& node() const noexcept {
      return node_;
    }

    bool is_var() const noexcept {
      return std::holds_alternative<Var>(node_);
    }
    bool is_nu() const noexcept {
      return std::holds_alternative<Nu>(node_);
    }
    bool is_g() const noexcept {
      return std::holds_alternative<G>(node_);
    }

    TermMeta const& meta() const noexcept {
      return meta_;
    }

    // Var has depth 1; Nu adds 1; G is 1 + the deeper child.
    std::size_t depth() const noexcept {
      return depth_;
    }

    bool contains_g() const {
      if (auto const* n = std::get_if<Nu>(&node_)) {
        return n->child->contains_g();
      }
      return is_g();
    }

    std::string to_string() const {
      return std::visit(
          [](auto const& n) -> std::string {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Var>) {
              return "x" + std::to_string(n.index);
            } else if constexpr (std::is_same_v<N, Nu>) {
              return "nu(" + n.coeff.to_string() + ", " + n.child->to_string()
                     + ")";
            } else {
              return "g(" + n.left->to_string() + ", " + n.right->to_string()
                     + ")";
            }
          },
          node_);
    }

    static Term parse(std::string_view text);

    // Structural equality.
    friend bool operator==(Term const& s, Term const& t) {
      if (s.node_.index() != t.node_.index()) {
        return false;
      }
      if (auto const* v = std::get_if<Var>(&s.node_)) {
        return v->index == std::get<Var>(t.node_).index;
      }
      if (auto const* n = std::get_if<Nu>(&s.node_)) {
        auto const& m = std::get<Nu>(t.node_);
        return n->coeff == m.coeff && *n->child == *m.child;
      }
      auto const& a = std::get<G>(s.node_);
      auto const& b = std::get<G>(t.node_);
      return *a.left == *b.left && *a.right == *b.right;
    }

   private:
    explicit Term(Node n) : node_(std::move(n)) {}

    Node        node_;
    TermMeta    meta_;
    std::size_t depth_ = 1;
  };

  inline TermMeta meta(Term const& t) {
    return t.meta();
  }

  // Term function of t at the first a(t) coordinates of args; the remaining
  // coordinates are ignored.
  inline Word eval(Term const& t, std::span<Word const> args, HMap const& h) {
    if (args.size() < t.meta().a) {
      throw ArityError("term " + t.to_string() + " needs "
                       + std::to_string(t.meta().a) + " arguments, got "
                       + std::to_string(args.size()));
    }
    return std::visit(
        [&](auto const& n) -> Word {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Term::Var>) {
            return args[n.index - 1];
          } else if constexpr (std::is_same_v<N, Term::Nu>) {
            return n.coeff * eval(*n.child, args, h);
          } else {
            return g_apply(h, eval(*n.left, args, h), eval(*n.right, args, h));
          }
        },
        t.node());
  }

  inline Word eval(Term const& t, std::vector<Word> const& args,
                   HMap const& h) {
    return eval(t, std::span<Word const>(args), h);
  }

  inline Term Term::parse(std::string_view text) {
    struct Parser {
      std::string_view s;
      std::size_t      pos = 0;

      void skip() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) {
          ++pos;
        }
      }
      bool eat(std::string_view tok) {
        skip();
        if (s.substr(pos, tok.size()) == tok) {
          pos += tok.size();
          return true;
        }
        return false;
      }
      void expect(std::string_view tok) {
        if (!eat(tok)) {
          throw ParseError("expected '" + std::string(tok) + "' at offset "
                           + std::to_string(pos) + " in '" + std::string(s)
                           + "'");
        }
      }
      Term term() {
        skip();
        if (eat("nu(")) {
          auto comma = s.find(',', pos);
          if (comma == std::string_view::npos) {
            throw ParseError("missing ',' in nu(...)");
          }
          Word c = Word::parse(s.substr(pos, comma - pos));
          pos    = comma + 1;
          Term child = term();
          expect(")");
          return Term::nu(std::move(c), child);
        }
        if (eat("g(")) {
          Term l = term();
          expect(",");
          Term r = term();
          expect(")");
          return Term::g(l, r);
        }
        if (eat("x")) {
          std::size_t start = pos;
          while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
            ++pos;
          }
          if (start == pos || pos - start > 9) {
            throw ParseError("bad variable in '" + std::string(s) + "'");
          }
          auto i = std::stoul(std::string(s.substr(start, pos - start)));
          if (i == 0) {
            throw ParseError("variable index must be >= 1");
          }
          return Term::var(i);
        }
        throw ParseError("unexpected input at offset " + std::to_string(pos)
                         + " in '" + std::string(s) + "'");
      }
    };
    Parser p{text};
    Term   t = p.term();
    p.skip();
    if (p.pos != text.size()) {
      throw ParseError("trailing input in '" + std::string(text) + "'");
    }
    return t;
  }

  namespace detail {
    inline Term random_term(Rng& rng, std::size_t depth, std::size_t max_var,
                            std::span<Word const> pool, bool force_g) {
      if (depth <= 1) {
        return Term::var(1 + rng.below(max_var));
      }
      auto kind = force_g ? 2 : rng.below(4);
      if (kind == 0) {
        return Term::var(1 + rng.below(max_var));
      }
      if (kind == 1 && !pool.empty()) {
        Word const& c = pool[rng.below(pool.size())];
        return Term::nu(c, random_term(rng, depth - 1, max_var, pool, false));
      }
      Term l = random_term(rng, depth - 1, max_var, pool, false);
      Term r = random_term(rng, depth - 1, max_var, pool, false);
      return Term::g(l, r);
    }
  }  // namespace detail

  // Deterministic corpus of terms with depth <= max_depth, variables
  // <= max_var and nu-coefficients from coeff_pool. The first term is rooted
  // at g whenever max_depth >= 2. Distinct terms are preferred; duplicates
  // only appear when the term space is (nearly) exhausted.
  inline std::vector<Term> sample_terms(std::size_t max_depth,
                                        std::size_t max_var,
                                        std::vector<Word> const& coeff_pool,
                                        std::uint64_t seed, std::size_t count) {
    if (max_depth < 1 || max_var < 1 || count < 1) {
      throw InvalidParams("sample_terms needs max_depth, max_var, count >= 1");
    }
    constexpr int                   attempts = 64;
    Rng                             rng(seed);
    std::vector<Term>               out;
    std::unordered_set<std::string> seen;
    out.reserve(count);
    while (out.size() < count) {
      bool force_g = out.empty() && max_depth >= 2;
      for (int k = 0;; ++k) {
        Term t = detail::random_term(rng, max_depth, max_var, coeff_pool,
                                     force_g);
        if (seen.insert(t.to_string()).second || k + 1 == attempts) {
          out.push_back(std::move(t));
          break;
        }
      }
    }
    return out;
  }

}  // namespace indalg

#pragma once

// The F-homogeneous algebra (F; nu_c, g) and the machinery showing that it
// fails the distributivity condition:
//  * classify() sorts every term t into
//      Form1: t(y) = w y_{t*} for a fixed w in FG(E u C_t), or
//      Form2: t(y) = f(y) y_{t*} where f has unboundedly many "fresh"
//             even generators in its values on (F+)^n;
//  * witness streams produce those fresh generators constructively;
//  * refute_distributivity() turns one witness into an explicit pair
//      a t(mu) != t(a mu)
//    for a generator a outside E u C_t.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "indalg/error.hpp"
#include "indalg/freegroup.hpp"
#include "indalg/hmap.hpp"
#include "indalg/random.hpp"
#include "indalg/terms.hpp"

namespace indalg {

  // Candidate tuples tried per witness sample before giving up.
  inline constexpr std::size_t witness_budget = 100000;

  struct WitnessSample {
    std::vector<Word> mu;
    Word              prefix;
    GenIndex          fresh_gen;
  };

  namespace detail {
    // How a Form2 term produces witnesses, one case per outermost shape.
    struct SamplerPlan {
      enum class Kind {
        nu_lift,         // t = nu_s(t1), t1 Form2
        extend_right,    // t = g(t1, t2), t2 Form2
        hash_of_form2,   // t = g(t1, t2), t1 Form2, t2 Form1, equal stars
        pair_fresh,      // t = g(t1, t2), t2 Form1, different stars
      };
      Kind                               kind;
      Term                               term;
      std::shared_ptr<SamplerPlan const> child;
      // pair_fresh: pairs drawn from odd generators outside C_t when the left
      // child is Form2, otherwise from generators outside w1 and w2.
      bool               left_is_form2 = false;
      std::set<GenIndex> avoid;
    };
  }  // namespace detail

  class TermForm {
   public:
    enum class Tag { form1, form2 };

    static TermForm form1(Word prefix) {
      TermForm f;
      f.tag_    = Tag::form1;
      f.prefix_ = std::move(prefix);
      return f;
    }

    static TermForm form2(std::shared_ptr<detail::SamplerPlan const> plan) {
      TermForm f;
      f.tag_  = Tag::form2;
      f.plan_ = std::move(plan);
      return f;
    }

    Tag tag() const noexcept {
      return tag_;
    }
    bool is_form1() const noexcept {
      return tag_ == Tag::form1;
    }
    bool is_form2() const noexcept {
      return tag_ == Tag::form2;
    }

    // Form1 only.
    Word const& prefix() const noexcept {
      return prefix_;
    }

    std::shared_ptr<detail::SamplerPlan const> const& plan() const noexcept {
      return plan_;
    }

    // Which constructive case produced a Form2 classification.
    std::string case_name() const {
      if (is_form1()) {
        return "form1";
      }
      switch (plan_->kind) {
        case detail::SamplerPlan::Kind::nu_lift:
          return "nu-lift";
        case detail::SamplerPlan::Kind::extend_right:
          return "right-form2";
        case detail::SamplerPlan::Kind::hash_of_form2:
          return "left-form2-equal-stars";
        case detail::SamplerPlan::Kind::pair_fresh:
          return plan_->left_is_form2 ? "left-form2-distinct-stars"
                                      : "left-form1-distinct-stars";
      }
      return "?";
    }

   private:
    TermForm() = default;

    Tag                                        tag_ = Tag::form1;
    Word                                       prefix_;
    std::shared_ptr<detail::SamplerPlan const> plan_;
  };

  // Prefix of t at y: t(y) y_{t*}^-1.
  inline Word prefix_at(Term const& t, std::span<Word const> y,
                        HMap const& h) {
    return eval(t, y, h) * y[t.meta().star - 1].inverse();
  }

  // Every generator of w is even or lies in the given content.
  inline bool in_fg_e_union(Word const& w, std::set<GenIndex> const& content) {
    for (auto const& s : w.syllables()) {
      if (!is_even(s.gen) && !content.contains(s.gen)) {
        return false;
      }
    }
    return true;
  }

  inline TermForm classify(Term const& t, HMap const& h) {
    using Plan = detail::SamplerPlan;
    return std::visit(
        [&](auto const& n) -> TermForm {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, Term::Var>) {
            return TermForm::form1(Word());
          } else if constexpr (std::is_same_v<N, Term::Nu>) {
            TermForm c = classify(*n.child, h);
            if (c.is_form1()) {
              return TermForm::form1(n.coeff * c.prefix());
            }
            return TermForm::form2(std::make_shared<Plan const>(
                Plan{Plan::Kind::nu_lift, t, c.plan()}));
          } else {
            Term const& t1 = *n.left;
            Term const& t2 = *n.right;
            TermForm    c1 = classify(t1, h);
            TermForm    c2 = classify(t2, h);
            if (c2.is_form2()) {
              return TermForm::form2(std::make_shared<Plan const>(
                  Plan{Plan::Kind::extend_right, t, c2.plan()}));
            }
            bool same_star = t1.meta().star == t2.meta().star;
            if (c1.is_form1() && same_star) {
              Word const& w1 = c1.prefix();
              Word const& w2 = c2.prefix();
              return TermForm::form1(z(h.lookup(w1 * w2.inverse())) * w2);
            }
            if (same_star) {
              return TermForm::form2(std::make_shared<Plan const>(
                  Plan{Plan::Kind::hash_of_form2, t, c1.plan()}));
            }
            Plan p{Plan::Kind::pair_fresh, t, nullptr};
            p.left_is_form2 = c1.is_form2();
            if (p.left_is_form2) {
              p.avoid = t.meta().content;
            } else {
              p.avoid = c1.prefix().gen_content();
            }
            auto w2c = c2.prefix().gen_content();
            p.avoid.insert(w2c.begin(), w2c.end());
            return TermForm::form2(std::make_shared<Plan const>(std::move(p)));
          }
        },
        t.node());
  }

  // Deterministic stream of witness samples for a Form2 term.
  class WitnessStream {
   public:
    WitnessStream(std::shared_ptr<detail::SamplerPlan const> plan,
                  HMap const&                                h)
        : plan_(std::move(plan)), h_(&h), arity_(plan_->term.meta().a) {
      using Kind = detail::SamplerPlan::Kind;
      if (plan_->kind == Kind::nu_lift || plan_->kind == Kind::hash_of_form2
          || plan_->kind == Kind::extend_right) {
        child_ = std::make_unique<WitnessStream>(plan_->child, h);
      }
    }

    Term const& term() const noexcept {
      return plan_->term;
    }

    WitnessSample next() {
      for (std::size_t tries = 0; tries < witness_budget; ++tries) {
        auto candidate = next_candidate();
        if (!candidate) {
          break;
        }
        if (accept(*candidate)) {
          used_.insert(candidate->fresh_gen);
          return std::move(*candidate);
        }
      }
      throw WitnessExhausted("no witness for " + plan_->term.to_string()
                             + " within the candidate budget");
    }

   private:
    using Kind = detail::SamplerPlan::Kind;

    std::vector<Word> extend(std::vector<Word> mu) const {
      mu.resize(arity_, z(1));
      return mu;
    }

    // h-argument at the root g node: t1(mu) t2(mu)^-1.
    GenIndex root_fresh(std::vector<Word> const& mu) const {
      auto const& g = std::get<Term::G>(plan_->term.node());
      return h_->lookup(eval(*g.left, mu, *h_)
                        * eval(*g.right, mu, *h_).inverse());
    }

    std::optional<WitnessSample> next_candidate() {
      WitnessSample s;
      switch (plan_->kind) {
        case Kind::nu_lift: {
          WitnessSample c = child_->next();
          s.mu            = std::move(c.mu);
          s.fresh_gen     = std::move(c.fresh_gen);
          break;
        }
        case Kind::extend_right: {
          WitnessSample c = child_->next();
          s.mu            = extend(std::move(c.mu));
          s.fresh_gen     = std::move(c.fresh_gen);
          break;
        }
        case Kind::hash_of_form2: {
          s.mu        = extend(child_->next().mu);
          s.fresh_gen = root_fresh(s.mu);
          break;
        }
        case Kind::pair_fresh: {
          auto [u1, u2] = next_pair();
          auto const& g = std::get<Term::G>(plan_->term.node());
          s.mu.assign(arity_, z(1));
          s.mu[g.left->meta().star - 1]  = z(u1);
          s.mu[g.right->meta().star - 1] = z(u2);
          s.fresh_gen                    = root_fresh(s.mu);
          break;
        }
      }
      s.prefix = prefix_at(plan_->term, s.mu, *h_);
      return s;
    }

    bool usable(GenIndex const& u) const {
      if (plan_->avoid.contains(u)) {
        return false;
      }
      return !plan_->left_is_form2 || !is_even(u);
    }

    // Ordered pairs of distinct usable generators, by increasing sum.
    std::pair<GenIndex, GenIndex> next_pair() {
      while (true) {
        ++pair_i_;
        if (pair_i_ >= pair_sum_) {
          ++pair_sum_;
          pair_i_ = 1;
        }
        GenIndex u1 = pair_i_, u2 = pair_sum_ - pair_i_;
        if (u1 != u2 && usable(u1) && usable(u2)) {
          return {u1, u2};
        }
      }
    }

    bool accept(WitnessSample const& s) const {
      if (used_.contains(s.fresh_gen)) {
        return false;
      }
      for (auto const& m : s.mu) {
        if (!m.is_positive()) {
          return false;
        }
      }
      return s.prefix.has_positive_occurrence(s.fresh_gen)
             && in_fg_e_union(s.prefix, plan_->term.meta().content);
    }

    std::shared_ptr<detail::SamplerPlan const> plan_;
    HMap const*                                h_;
    std::size_t                                arity_;
    std::unique_ptr<WitnessStream>             child_;
    std::set<GenIndex>                         used_;
    std::uint64_t                              pair_sum_ = 2;
    std::uint64_t                              pair_i_   = 1;
  };

  inline std::vector<WitnessSample> sample_witnesses(TermForm const& form,
                                                     Term const&     t,
                                                     HMap const&     h,
                                                     std::size_t     count) {
    if (!form.is_form2()) {
      throw NotForm2("witnesses exist only for Form2 terms; "
                     + t.to_string() + " is Form1");
    }
    if (!(form.plan()->term == t)) {
      throw InvalidParams("form was not produced for " + t.to_string());
    }
    WitnessStream              stream(form.plan(), h);
    std::vector<WitnessSample> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      out.push_back(stream.next());
    }
    return out;
  }

  struct HomogeneityFailure {
    Word w1, w2, shift;
    Word lhs, rhs;
  };

  struct HomogeneityReport {
    std::size_t                     samples = 0;
    std::vector<HomogeneityFailure> failures;
  };

  // g(w1 w', w2 w') == g(w1, w2) w' on the given triples.
  inline HomogeneityReport check_homogeneity(
      HMap const& h, std::vector<std::array<Word, 3>> const& triples) {
    HomogeneityReport r;
    for (auto const& [w1, w2, s] : triples) {
      Word lhs = g_apply(h, w1 * s, w2 * s);
      Word rhs = g_apply(h, w1, w2) * s;
      ++r.samples;
      if (lhs != rhs) {
        r.failures.push_back({w1, w2, s, std::move(lhs), std::move(rhs)});
      }
    }
    return r;
  }

  inline HomogeneityReport check_homogeneity(HMap const& h,
                                             std::size_t samples,
                                             std::uint64_t seed) {
    if (samples < 1) {
      throw InvalidParams("samples must be >= 1");
    }
    Rng                              rng(seed);
    std::vector<std::array<Word, 3>> triples;
    triples.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      Word w1 = random_word(rng, 4, 6, 3);
      Word w2 = random_word(rng, 4, 6, 3);
      Word s  = random_word(rng, 4, 6, 3);
      triples.push_back({std::move(w1), std::move(w2), std::move(s)});
    }
    return check_homogeneity(h, triples);
  }

  struct Counterexample {
    Term              term;
    Word              a;
    std::vector<Word> mu;
    Word              lhs;  // a t(mu)
    Word              rhs;  // t(a mu)

    bool refutes() const {
      return lhs != rhs;
    }
  };

  // z_k for the smallest odd k outside C_t.
  inline Word refutation_element(Term const& t) {
    GenIndex k = 1;
    while (t.meta().content.contains(k)) {
      k += 2;
    }
    return z(k);
  }

  inline Counterexample refute_distributivity(Term const& t, HMap const& h,
                                              Word const&              a,
                                              std::vector<Word> const& mu) {
    Counterexample c{t, a, mu, {}, {}};
    c.lhs = a * eval(t, mu, h);
    std::vector<Word> shifted;
    shifted.reserve(mu.size());
    for (auto const& m : mu) {
      shifted.push_back(a * m);
    }
    c.rhs = eval(t, shifted, h);
    return c;
  }

  inline Counterexample refute_distributivity(Term const& t, HMap const& h) {
    TermForm form = classify(t, h);
    if (!form.is_form2()) {
      throw NotForm2(t.to_string() + " is Form1: prefix "
                     + form.prefix().to_string());
    }
    WitnessStream stream(form.plan(), h);
    WitnessSample w = stream.next();
    return refute_distributivity(t, h, refutation_element(t), w.mu);
  }

}  // namespace indalg

#pragma once

// The free act backend. B is the free (N,+)-act on generators b_1..b_n,
// its elements t^m b_i (m >= 0) written (m, i); A is the free (Z,+)-act,
// the same with m in Z. An endomorphism is fixed by its generator images
//   b_i -> (s_i, tau_i),   so   (m, i) -> (m + s_i, tau_i).
// B-endomorphisms have s_i >= 0. Products are written in diagram order:
// compose(x, y) applies x first, matching the right-action notation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "indalg/error.hpp"
#include "indalg/matrix_orders.hpp"
#include "indalg/random.hpp"

namespace indalg {

  inline constexpr std::size_t max_act_rank = 3;

  enum class Flavor { B, A };

  // t^shift b_gen; gen is 1-based.
  struct ActElem {
    std::int64_t shift = 0;
    std::size_t  gen   = 1;

    friend bool operator==(ActElem const&, ActElem const&) = default;
    friend auto operator<=>(ActElem const&, ActElem const&) = default;
  };

  class ActEndo {
   public:
    ActEndo() = default;

    ActEndo(std::vector<ActElem> images, Flavor flavor)
        : images_(std::move(images)), flavor_(flavor) {
      std::size_t const n = images_.size();
      if (n < 1) {
        throw InvalidParams("act endomorphisms need rank >= 1");
      }
      for (auto const& e : images_) {
        if (e.gen < 1 || e.gen > n) {
          throw InvalidParams("target index out of range");
        }
        if (flavor_ == Flavor::B && e.shift < 0) {
          throw InvalidParams("B-endomorphisms have nonnegative shifts");
        }
      }
    }

    static ActEndo identity(std::size_t n, Flavor f = Flavor::B) {
      std::vector<ActElem> im;
      for (std::size_t i = 1; i <= n; ++i) {
        im.push_back({0, i});
      }
      return {std::move(im), f};
    }

    // b_i -> (k, i).
    static ActEndo shift(std::size_t n, std::int64_t k, Flavor f) {
      std::vector<ActElem> im;
      for (std::size_t i = 1; i <= n; ++i) {
        im.push_back({k, i});
      }
      return {std::move(im), f};
    }

    std::size_t rank_n() const noexcept {
      return images_.size();
    }
    Flavor flavor() const noexcept {
      return flavor_;
    }
    std::vector<ActElem> const& images() const noexcept {
      return images_;
    }
    ActElem const& image(std::size_t i) const {
      return images_.at(i - 1);
    }

    ActElem apply(ActElem const& x) const {
      auto const& im = image(x.gen);
      return {x.shift + im.shift, im.gen};
    }

    std::set<std::size_t> targets() const {
      std::set<std::size_t> s;
      for (auto const& e : images_) {
        s.insert(e.gen);
      }
      return s;
    }

    // Rank of the image: number of generators hit.
    std::size_t rank() const {
      return targets().size();
    }

    std::int64_t min_shift() const {
      std::int64_t m = images_[0].shift;
      for (auto const& e : images_) {
        m = std::min(m, e.shift);
      }
      return m;
    }

    std::int64_t max_shift() const {
      std::int64_t m = images_[0].shift;
      for (auto const& e : images_) {
        m = std::max(m, e.shift);
      }
      return m;
    }

    bool fits_b() const {
      return min_shift() >= 0;
    }

    std::string to_string() const {
      std::string s = "[";
      for (std::size_t i = 0; i < images_.size(); ++i) {
        s += (i ? ", " : "") + std::string("b") + std::to_string(i + 1) + "->("
             + std::to_string(images_[i].shift) + ","
             + std::to_string(images_[i].gen) + ")";
      }
      return s + "]";
    }

    // Equality of maps; the flavor is bookkeeping.
    friend bool operator==(ActEndo const& x, ActEndo const& y) {
      return x.images_ == y.images_;
    }

   private:
    std::vector<ActElem> images_;
    Flavor               flavor_ = Flavor::B;
  };

  inline void check_same_rank(ActEndo const& x, ActEndo const& y) {
    if (x.rank_n() != y.rank_n()) {
      throw InvalidParams("act endomorphisms of different rank");
    }
  }

  // First x, then y. The result is a B-endomorphism when both are.
  inline ActEndo compose(ActEndo const& x, ActEndo const& y) {
    check_same_rank(x, y);
    std::vector<ActElem> im;
    for (auto const& e : x.images()) {
      im.push_back(y.apply(e));
    }
    Flavor f = x.flavor() == Flavor::B && y.flavor() == Flavor::B ? Flavor::B : Flavor::A;
    return {std::move(im), f};
  }

  inline ActEndo lift(ActEndo const& theta) {
    return {theta.images(), Flavor::A};
  }

  // As a B-endomorphism; fails when a shift is negative.
  inline ActEndo as_b(ActEndo const& theta) {
    return {theta.images(), Flavor::B};
  }

  // -------------------------------------------------------------------
  // Quotient elements

  // [t^k, (m, i)] in canonical form (m - k, i).
  using ActQuot = ActElem;

  struct ActPair {
    std::int64_t k;  // t^k in T
    ActElem      b;
  };

  inline ActQuot canonical(ActPair const& p) {
    if (p.k < 0 || p.b.shift < 0) {
      throw InvalidParams("pairs live in T x B: shifts must be nonnegative");
    }
    return {p.b.shift - p.k, p.b.gen};
  }

  // t^x t^k = t^y t^l and t^x (m, i) = t^y (m', j): align the shifts with
  // x = l, y = k.
  inline bool quotient_eq(ActPair const& p, ActPair const& q) {
    canonical(p);
    canonical(q);
    return p.b.gen == q.b.gen && p.b.shift + q.k == q.b.shift + p.k;
  }

  inline ActQuot embed(ActElem const& b) {
    return canonical({0, b});
  }

  // -------------------------------------------------------------------
  // Kernels and images

  // ker x subset of ker y, closed form: whenever x identifies the generator
  // orbits of b_i and b_j, y identifies them with the same offset. Exact for
  // both flavors since every offset is realised by some pair in B.
  inline bool kernel_contained(ActEndo const& x, ActEndo const& y) {
    check_same_rank(x, y);
    std::size_t const n = x.rank_n();
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        if (x.image(i).gen != x.image(j).gen) {
          continue;
        }
        if (y.image(i).gen != y.image(j).gen
            || y.image(i).shift - y.image(j).shift
                   != x.image(i).shift - x.image(j).shift) {
          return false;
        }
      }
    }
    return true;
  }

  // The same for B-endomorphisms by enumerating every pair of elements with
  // shifts in [0, window]; a window of at least the largest shift difference
  // of x makes it exact.
  inline bool kernel_contained_window(ActEndo const& x, ActEndo const& y,
                                      std::int64_t window) {
    check_same_rank(x, y);
    std::size_t const n = x.rank_n();
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        for (std::int64_t m = 0; m <= window; ++m) {
          for (std::int64_t mm = 0; mm <= window; ++mm) {
            ActElem u{m, i}, v{mm, j};
            if (x.apply(u) == x.apply(v) && y.apply(u) != y.apply(v)) {
              return false;
            }
          }
        }
      }
    }
    return true;
  }

  inline std::int64_t exact_window(ActEndo const& x) {
    return x.max_shift() - x.min_shift();
  }

  // PC closure of a set of elements: every element whose generator occurs.
  inline std::set<std::size_t> pc_closure(std::vector<ActElem> const& s) {
    std::set<std::size_t> gens;
    for (auto const& e : s) {
      gens.insert(e.gen);
    }
    return gens;
  }

  // im x subset of im y in A, where im = {(k, tau_i) : k in Z}.
  inline bool image_contained(ActEndo const& x, ActEndo const& y) {
    auto tx = x.targets(), ty = y.targets();
    return std::includes(ty.begin(), ty.end(), tx.begin(), tx.end());
  }

  inline bool greens_leq(Side side, ActEndo const& alpha, ActEndo const& beta) {
    check_same_rank(alpha, beta);
    if (is_starred(side)) {
      if (alpha.flavor() != Flavor::B || beta.flavor() != Flavor::B) {
        throw MixedBackends("starred relations compare B-endomorphisms");
      }
    } else if (alpha.flavor() != beta.flavor()) {
      throw MixedBackends("cannot compare a B-endomorphism with an A-endomorphism");
    }
    switch (side) {
      case Side::R:
        return kernel_contained(beta, alpha);
      case Side::L:
        return image_contained(alpha, beta);
      case Side::Rstar:
        return kernel_contained_window(beta, alpha, exact_window(beta));
      case Side::Lstar: {
        auto pa = pc_closure(alpha.images()), pb = pc_closure(beta.images());
        return std::includes(pb.begin(), pb.end(), pa.begin(), pa.end());
      }
    }
    return false;
  }

  inline bool greens_eq(Side side, ActEndo const& x, ActEndo const& y) {
    return greens_leq(side, x, y) && greens_leq(side, y, x);
  }

  // -------------------------------------------------------------------
  // Group inverses and decompositions

  // alpha lies in a subgroup of End(A) iff tau permutes its own targets,
  // iff rank alpha^2 = rank alpha.
  inline bool has_group_inverse(ActEndo const& alpha) {
    return compose(alpha, alpha).rank() == alpha.rank();
  }

  // The inverse of alpha in its H-class of End(A).
  inline ActEndo group_inverse(ActEndo const& alpha) {
    if (!has_group_inverse(alpha)) {
      throw NoGroupInverse("rank drops on squaring: no subgroup contains alpha");
    }
    std::size_t const n = alpha.rank_n();
    auto              S = alpha.targets();
    // rep[t] = the unique target in the fibre of tau over t.
    std::map<std::size_t, std::size_t> rep;
    for (auto r : S) {
      rep[alpha.image(r).gen] = r;
    }
    std::vector<ActElem> im(n);
    for (auto t : S) {
      std::size_t r = rep.at(t);
      im[t - 1]     = {-alpha.image(r).shift, r};
    }
    for (std::size_t j = 1; j <= n; ++j) {
      if (S.contains(j)) {
        continue;
      }
      // Same fibre as some target r; keep the offset so ker is unchanged.
      std::size_t r = rep.at(alpha.image(j).gen);
      ActElem     base = im[r - 1];
      im[j - 1] = {base.shift + alpha.image(j).shift - alpha.image(r).shift, base.gen};
    }
    return {std::move(im), Flavor::A};
  }

  struct ActLeftDecomposition {
    ActEndo a, b;  // alpha = a# b
  };

  // a = t^d on every generator, b = alpha followed by t^d.
  inline ActLeftDecomposition act_left_decompose(ActEndo const& alpha) {
    std::size_t const  n = alpha.rank_n();
    std::int64_t const d = std::max<std::int64_t>(0, -alpha.min_shift());
    std::vector<ActElem> bi;
    for (auto const& e : alpha.images()) {
      bi.push_back({e.shift + d, e.gen});
    }
    return {ActEndo::shift(n, d, Flavor::B), ActEndo(std::move(bi), Flavor::B)};
  }

  inline ActEndo recompose(ActLeftDecomposition const& l) {
    return compose(group_inverse(lift(l.a)), lift(l.b));
  }

  struct ActRightDecomposition {
    ActEndo gamma, beta;  // alpha = gamma beta^-1
  };

  // beta = t^d, gamma = alpha followed by t^d.
  inline ActRightDecomposition act_right_decompose(ActEndo const& alpha) {
    auto l = act_left_decompose(alpha);
    return {l.b, l.a};
  }

  inline ActEndo recompose(ActRightDecomposition const& r) {
    return compose(lift(r.gamma), group_inverse(lift(r.beta)));
  }

  // -------------------------------------------------------------------
  // Idempotents in starred classes

  // Same targets as alpha: fixes its targets, sends the rest to the first.
  inline ActEndo lstar_idempotent(ActEndo const& alpha) {
    auto                 S = alpha.targets();
    std::vector<ActElem> im;
    for (std::size_t i = 1; i <= alpha.rank_n(); ++i) {
      im.push_back({0, S.contains(i) ? i : *S.begin()});
    }
    return {std::move(im), Flavor::B};
  }

  // Same kernel as alpha: each fibre goes to its member of least shift,
  // offsets preserved.
  inline ActEndo rstar_idempotent(ActEndo const& alpha) {
    std::size_t const                  n = alpha.rank_n();
    std::map<std::size_t, std::size_t> low;  // fibre -> representative
    for (std::size_t i = 1; i <= n; ++i) {
      auto t  = alpha.image(i).gen;
      auto it = low.find(t);
      if (it == low.end() || alpha.image(i).shift < alpha.image(it->second).shift) {
        low[t] = i;
      }
    }
    std::vector<ActElem> im;
    for (std::size_t i = 1; i <= n; ++i) {
      std::size_t r = low.at(alpha.image(i).gen);
      im.push_back({alpha.image(i).shift - alpha.image(r).shift, r});
    }
    return {std::move(im), Flavor::B};
  }

  // a = e t^d with e the idempotent sharing the kernel of alpha, and
  // b = alpha t^d. Then ker a = ker b and a# b = e alpha = alpha.
  inline ActLeftDecomposition act_straight_left_decompose(ActEndo const& alpha) {
    std::size_t const  n = alpha.rank_n();
    std::int64_t const d = std::max<std::int64_t>(0, -alpha.min_shift());
    ActEndo            e = rstar_idempotent(alpha);
    return {compose(e, ActEndo::shift(n, d, Flavor::B)),
            as_b(compose(lift(alpha), ActEndo::shift(n, d, Flavor::A)))};
  }

  // -------------------------------------------------------------------
  // gamma constructions

  // Given PC(im alpha) in PC(im beta), gamma with PC(im gamma beta) =
  // PC(im alpha): b_k is sent to a generator whose beta-image lies over
  // the generator alpha hits from b_k, preferring b_k itself.
  inline ActEndo gamma_left(ActEndo const& alpha, ActEndo const& beta) {
    if (!greens_leq(Side::Lstar, alpha, beta)) {
      throw PreconditionViolated("gamma_left needs alpha <=_L* beta");
    }
    std::size_t const    n = alpha.rank_n();
    std::vector<ActElem> im;
    for (std::size_t k = 1; k <= n; ++k) {
      std::size_t want = alpha.image(k).gen;
      std::size_t pick = 0;
      if (beta.image(k).gen == want) {
        pick = k;
      } else {
        for (std::size_t i = 1; i <= n && pick == 0; ++i) {
          if (beta.image(i).gen == want) {
            pick = i;
          }
        }
      }
      im.push_back({0, pick});
    }
    return {std::move(im), Flavor::B};
  }

  // Given ker beta in ker alpha, gamma with ker(beta gamma) = ker alpha.
  // The targets u_j of beta form a basis of PC(im beta); t^P u_j lies in
  // im beta for P the largest of the least shifts over each u_j, and
  //   u_j gamma = t^{P - s_i} (b_i alpha)   for a least-shift preimage b_i,
  // so that beta gamma = t^P alpha. Other generators go where u_1 goes.
  inline ActEndo gamma_right(ActEndo const& alpha, ActEndo const& beta) {
    if (alpha.flavor() != Flavor::B || beta.flavor() != Flavor::B) {
      throw MixedBackends("gamma_right works on B-endomorphisms");
    }
    if (!kernel_contained(beta, alpha)) {
      throw PreconditionViolated("gamma_right needs alpha <=_R* beta");
    }
    std::size_t const                  n = alpha.rank_n();
    std::map<std::size_t, std::size_t> pre;  // target -> least-shift preimage
    for (std::size_t i = 1; i <= n; ++i) {
      auto t  = beta.image(i).gen;
      auto it = pre.find(t);
      if (it == pre.end() || beta.image(i).shift < beta.image(it->second).shift) {
        pre[t] = i;
      }
    }
    std::int64_t P = 0;
    for (auto const& [t, i] : pre) {
      P = std::max(P, beta.image(i).shift);
    }
    std::vector<ActElem> im(n);
    for (auto const& [t, i] : pre) {
      im[t - 1] = {P - beta.image(i).shift + alpha.image(i).shift, alpha.image(i).gen};
    }
    ActElem first = im[pre.begin()->first - 1];
    for (std::size_t u = 1; u <= n; ++u) {
      if (!pre.contains(u)) {
        im[u - 1] = first;
      }
    }
    return {std::move(im), Flavor::B};
  }

  // -------------------------------------------------------------------
  // Sampling

  // Shifts in [0, 5] (B) or [-5, 5] (A), targets uniform.
  inline ActEndo random_act_endo(Rng& rng, std::size_t n, Flavor f) {
    std::vector<ActElem> im;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t s = f == Flavor::B ? rng.range(0, 5) : rng.range(-5, 5);
      im.push_back({s, 1 + rng.below(n)});
    }
    return {std::move(im), f};
  }

}  // namespace indalg

#pragma once

// Seeded checks of the conditions characterising fully stratified straight
// left orders, on the act backend (exact, per sample) and on the matrix
// backend (full stratification, with the gamma conditions informational).

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "indalg/act_orders.hpp"
#include "indalg/error.hpp"
#include "indalg/linalg.hpp"
#include "indalg/matrix_orders.hpp"
#include "indalg/random.hpp"

namespace indalg {

  inline constexpr std::size_t max_reported_counterexamples = 8;

  struct CheckResult {
    std::string              name;
    bool                     informational = false;
    std::size_t              cases         = 0;
    std::size_t              failures      = 0;
    std::vector<std::string> counterexamples;

    bool passed() const {
      return failures == 0;
    }

    void record(bool ok, std::string const& what) {
      ++cases;
      if (!ok) {
        ++failures;
        if (counterexamples.size() < max_reported_counterexamples) {
          counterexamples.push_back(what);
        }
      }
    }
  };

  struct SuiteReport {
    std::string              backend;
    std::size_t              n       = 0;
    std::uint64_t            seed    = 0;
    std::size_t              samples = 0;
    std::vector<CheckResult> checks;

    bool all_passed() const {
      for (auto const& c : checks) {
        if (!c.informational && !c.passed()) {
          return false;
        }
      }
      return true;
    }

    CheckResult const* find(std::string const& name) const {
      for (auto const& c : checks) {
        if (c.name == name) {
          return &c;
        }
      }
      return nullptr;
    }
  };

  namespace detail {
    inline std::string show(ActEndo const& x) {
      return x.to_string();
    }

    // A B-endomorphism that lies in a subgroup of End(A): tau permutes a
    // random target set S and sends the other generators into S.
    inline ActEndo random_group_endo(Rng& rng, std::size_t n) {
      std::vector<std::size_t> gens;
      for (std::size_t i = 1; i <= n; ++i) {
        gens.push_back(i);
      }
      for (std::size_t i = n; i > 1; --i) {
        std::swap(gens[i - 1], gens[rng.below(i)]);
      }
      std::size_t              k = 1 + rng.below(n);
      std::vector<std::size_t> S(gens.begin(), gens.begin() + k);
      std::vector<std::size_t> perm = S;
      for (std::size_t i = k; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng.below(i)]);
      }
      std::vector<ActElem> im(n);
      for (std::size_t j = 0; j < k; ++j) {
        im[S[j] - 1] = {rng.range(0, 5), perm[j]};
      }
      for (std::size_t j = k; j < n; ++j) {
        im[gens[j] - 1] = {rng.range(0, 5), S[rng.below(k)]};
      }
      return {std::move(im), Flavor::B};
    }

    // A B-endomorphism beta with ker alpha in ker beta (alpha a group
    // element): free on the targets of alpha, forced elsewhere.
    inline ActEndo random_below_r(Rng& rng, ActEndo const& alpha) {
      std::size_t const n = alpha.rank_n();
      auto              S = alpha.targets();
      std::vector<ActElem> im(n);
      std::map<std::size_t, std::size_t> rep;  // fibre -> member of S
      for (auto r : S) {
        rep[alpha.image(r).gen] = r;
        im[r - 1]               = {rng.range(0, 5), 1 + rng.below(n)};
      }
      std::int64_t low = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (S.contains(j)) {
          continue;
        }
        std::size_t r = rep.at(alpha.image(j).gen);
        im[j - 1] = {im[r - 1].shift + alpha.image(j).shift - alpha.image(r).shift,
                     im[r - 1].gen};
        low = std::min(low, im[j - 1].shift);
      }
      for (auto& e : im) {
        e.shift -= low;
      }
      return {std::move(im), Flavor::B};
    }

    // A B-endomorphism with targets inside those of alpha.
    inline ActEndo random_below_l(Rng& rng, ActEndo const& alpha) {
      auto                     S = alpha.targets();
      std::vector<std::size_t> s(S.begin(), S.end());
      std::vector<ActElem>     im;
      for (std::size_t i = 0; i < alpha.rank_n(); ++i) {
        im.push_back({rng.range(0, 5), s[rng.below(s.size())]});
      }
      return {std::move(im), Flavor::B};
    }

    // A B-endomorphism injective on B: permutation of generators, any shifts.
    inline ActEndo random_injective(Rng& rng, std::size_t n) {
      std::vector<std::size_t> p;
      for (std::size_t i = 1; i <= n; ++i) {
        p.push_back(i);
      }
      for (std::size_t i = n; i > 1; --i) {
        std::swap(p[i - 1], p[rng.below(i)]);
      }
      std::vector<ActElem> im;
      for (auto g : p) {
        im.push_back({rng.range(0, 3), g});
      }
      return {std::move(im), Flavor::B};
    }

    // w permuting the targets of a among themselves (other generators fixed),
    // so that compose(a, w) stays in the H*-class of a.
    inline ActEndo random_target_perm(Rng& rng, ActEndo const& a) {
      auto                     S = a.targets();
      std::vector<std::size_t> s(S.begin(), S.end()), p = s;
      for (std::size_t i = p.size(); i > 1; --i) {
        std::swap(p[i - 1], p[rng.below(i)]);
      }
      auto im = ActEndo::identity(a.rank_n()).images();
      for (std::size_t j = 0; j < s.size(); ++j) {
        im[s[j] - 1] = {rng.range(0, 3), p[j]};
      }
      return {std::move(im), Flavor::B};
    }

    // Pairs biased toward comparability: alpha = x beta or alpha = beta x.
    inline std::pair<ActEndo, ActEndo> random_pair(Rng& rng, std::size_t n) {
      ActEndo beta = random_act_endo(rng, n, Flavor::B);
      switch (rng.below(3)) {
        case 0:
          return {compose(random_act_endo(rng, n, Flavor::B), beta), beta};
        case 1:
          return {compose(beta, random_act_endo(rng, n, Flavor::B)), beta};
        default:
          return {random_act_endo(rng, n, Flavor::B), beta};
      }
    }

    // gamma with targets(gamma) = targets(x) and ker gamma = ker y; needs
    // rank x = rank y. Fibres of y go, in order, to the targets of x.
    inline ActEndo transport(ActEndo const& x, ActEndo const& y) {
      auto                     Sx = x.targets();
      std::vector<std::size_t> tx(Sx.begin(), Sx.end());
      std::map<std::size_t, std::size_t> slot;
      for (auto t : y.targets()) {
        slot.emplace(t, slot.size());
      }
      std::vector<ActElem> im;
      for (auto const& e : y.images()) {
        im.push_back({e.shift, tx[slot.at(e.gen)]});
      }
      return {std::move(im), Flavor::B};
    }

    // Number of generator images c (target in allowed, shift in [0, window])
    // with pred(c).
    template <typename Pred>
    std::size_t count_images(std::size_t n, std::int64_t window, Pred&& pred) {
      std::size_t count = 0;
      for (std::size_t g = 1; g <= n; ++g) {
        for (std::int64_t s = 0; s <= window; ++s) {
          count += pred(ActElem{s, g}) ? 1 : 0;
        }
      }
      return count;
    }
  }  // namespace detail

  inline SuiteReport stratification_suite_act(std::size_t n, std::uint64_t seed,
                                              std::size_t samples) {
    if (n < 1 || n > max_act_rank) {
      throw InvalidParams("act suite rank must be in [1, 3]");
    }
    if (samples < 1) {
      throw InvalidParams("samples must be >= 1");
    }
    using detail::show;
    Rng         rng(seed);
    SuiteReport rep{"act", n, seed, samples, {}};
    CheckResult fs_r{"full-stratification-R"}, fs_l{"full-stratification-L"};
    CheckResult ei{"Ei"}, eii_l{"Eii(l)"}, eii_r{"Eii(r)"};
    CheckResult eiii_l{"Eiii(l)"}, eiii_r{"Eiii(r)"};
    CheckResult evi_l{"Evi(l)"}, evi_r{"Evi(r)"}, evii_r{"Evii(r)"}, gii{"Gii"};

    for (std::size_t k = 0; k < samples; ++k) {
      auto [alpha, beta] = detail::random_pair(rng, n);
      std::string pair   = "alpha=" + show(alpha) + " beta=" + show(beta);

      // Full stratification: starred preorders in End(B) against plain ones
      // of the lifts in End(A).
      fs_r.record(greens_leq(Side::Rstar, alpha, beta)
                      == greens_leq(Side::R, lift(alpha), lift(beta)),
                  pair);
      fs_l.record(greens_leq(Side::Lstar, alpha, beta)
                      == greens_leq(Side::L, lift(alpha), lift(beta)),
                  pair);

      // (Ei): alpha L* g R* beta for some g iff alpha R* d L* beta for some
      // d. Rank is invariant under both relations, and equal rank yields
      // explicit witnesses.
      {
        bool ok = true;
        if (alpha.rank() == beta.rank()) {
          ActEndo g = detail::transport(alpha, beta);
          ActEndo d = detail::transport(beta, alpha);
          ok = greens_eq(Side::Lstar, alpha, g) && greens_eq(Side::Rstar, g, beta)
               && greens_eq(Side::Rstar, alpha, d) && greens_eq(Side::Lstar, d, beta);
        }
        ei.record(ok, pair);
      }

      // (Eii)(l) and (Eii)(r): constructive direction on comparable pairs,
      // converse on a random gamma.
      if (greens_leq(Side::Lstar, alpha, beta)) {
        ActEndo g = gamma_left(alpha, beta);
        eii_l.record(greens_eq(Side::Lstar, alpha, compose(g, beta)),
                     pair + " gamma=" + show(g));
      }
      {
        ActEndo g = random_act_endo(rng, n, Flavor::B);
        bool related = greens_eq(Side::Lstar, alpha, compose(g, beta));
        eii_l.record(!related || greens_leq(Side::Lstar, alpha, beta),
                     pair + " gamma=" + show(g));
      }
      if (greens_leq(Side::Rstar, alpha, beta)) {
        ActEndo g = gamma_right(alpha, beta);
        eii_r.record(greens_eq(Side::Rstar, alpha, compose(beta, g)),
                     pair + " gamma=" + show(g));
      }
      {
        ActEndo g = random_act_endo(rng, n, Flavor::B);
        bool related = greens_eq(Side::Rstar, alpha, compose(beta, g));
        eii_r.record(!related || greens_leq(Side::Rstar, alpha, beta),
                     pair + " gamma=" + show(g));
      }

      // (Eiii): an idempotent, hence in a subgroup, in each starred class.
      {
        ActEndo e = lstar_idempotent(alpha);
        eiii_l.record(compose(e, e) == e && greens_eq(Side::Lstar, e, alpha)
                          && has_group_inverse(lift(e)),
                      "alpha=" + show(alpha) + " e=" + show(e));
        ActEndo f = rstar_idempotent(alpha);
        eiii_r.record(compose(f, f) == f && greens_eq(Side::Rstar, f, alpha)
                          && has_group_inverse(lift(f)),
                      "alpha=" + show(alpha) + " e=" + show(f));
      }

      // Conditions on a group element a (the subgroup criterion stands in
      // for square-cancellability).
      ActEndo a = detail::random_group_endo(rng, n);
      std::int64_t const amax = a.max_shift();
      auto S = a.targets();

      // (Evi)(l): x, y <=_L* a and x a = y a imply x = y. Each generator
      // image of y is constrained separately, so counting solutions per
      // generator inside an exact window decides uniqueness.
      {
        ActEndo x  = detail::random_below_l(rng, a);
        ActEndo xa = compose(x, a);
        std::int64_t window = x.max_shift() + amax;
        bool ok = true;
        for (std::size_t i = 1; i <= n; ++i) {
          auto cnt = detail::count_images(n, window, [&](ActElem c) {
            return S.contains(c.gen) && a.apply(c) == xa.image(i);
          });
          ok &= cnt == 1;
        }
        evi_l.record(ok, "a=" + show(a) + " x=" + show(x));
      }

      // (Evi)(r): x, y <=_R* a and a x = a y imply x = y. On the targets of
      // a, y is fixed by a y = a x; elsewhere by ker a in ker y.
      {
        ActEndo x  = detail::random_below_r(rng, a);
        ActEndo ax = compose(a, x);
        std::int64_t window = x.max_shift() + 2 * amax;
        std::map<std::size_t, std::size_t> rep;
        for (auto r : S) {
          rep[a.image(r).gen] = r;
        }
        bool ok = true;
        std::vector<ActElem> y(n);
        for (auto t : S) {
          std::size_t i = 0;  // some generator a sends over t
          for (std::size_t j = 1; j <= n && i == 0; ++j) {
            if (a.image(j).gen == t) {
              i = j;
            }
          }
          auto cnt = detail::count_images(n, window, [&](ActElem c) {
            bool hit = ActElem{a.image(i).shift + c.shift, c.gen} == ax.image(i);
            if (hit) {
              y[t - 1] = c;
            }
            return hit;
          });
          ok &= cnt == 1;
        }
        for (std::size_t j = 1; j <= n && ok; ++j) {
          if (S.contains(j)) {
            continue;
          }
          std::size_t r   = rep.at(a.image(j).gen);
          auto        cnt = detail::count_images(n, window, [&](ActElem c) {
            return c.gen == y[r - 1].gen
                   && c.shift - y[r - 1].shift == a.image(j).shift - a.image(r).shift;
          });
          ok &= cnt == 1 && x.image(j).gen == y[r - 1].gen;
        }
        for (auto t : S) {
          ok &= y[t - 1] == x.image(t);
        }
        evi_r.record(ok, "a=" + show(a) + " x=" + show(x));
      }

      // (Evii)(r): x, y <=_R* a and a x R* a y imply x R* y.
      {
        ActEndo x = detail::random_below_r(rng, a);
        ActEndo y = rng.coin() ? compose(x, detail::random_injective(rng, n))
                               : detail::random_below_r(rng, a);
        bool premise = greens_eq(Side::Rstar, compose(a, x), compose(a, y));
        evii_r.record(!premise || greens_eq(Side::Rstar, x, y),
                      "a=" + show(a) + " x=" + show(x) + " y=" + show(y));
      }

      // (Gii): for x, y in H*_a there are u, v in H*_a with u x = v y.
      // With e the identity of the group H_a of End(A) and K large enough,
      // v = e t^K and u = v y x# work.
      {
        ActEndo x = compose(a, detail::random_target_perm(rng, a));
        ActEndo y = compose(a, detail::random_target_perm(rng, a));
        ActEndo e = compose(lift(a), group_inverse(lift(a)));
        ActEndo w = compose(compose(e, lift(y)), group_inverse(lift(x)));
        std::int64_t K = std::max<std::int64_t>({0, -e.min_shift(), -w.min_shift()});
        ActEndo v = as_b(compose(e, ActEndo::shift(n, K, Flavor::A)));
        ActEndo u = as_b(compose(w, ActEndo::shift(n, K, Flavor::A)));
        bool in_h = greens_eq(Side::Lstar, x, a) && greens_eq(Side::Rstar, x, a)
                    && greens_eq(Side::Lstar, y, a) && greens_eq(Side::Rstar, y, a)
                    && greens_eq(Side::Lstar, u, a) && greens_eq(Side::Rstar, u, a)
                    && greens_eq(Side::Lstar, v, a) && greens_eq(Side::Rstar, v, a);
        gii.record(in_h && compose(u, x) == compose(v, y),
                   "a=" + show(a) + " x=" + show(x) + " y=" + show(y) + " u="
                       + show(u) + " v=" + show(v));
      }
    }
    rep.checks = {fs_r,   fs_l,   ei,     eii_l,  eii_r, eiii_l,
                  eiii_r, evi_l,  evi_r,  evii_r, gii};
    return rep;
  }

  inline SuiteReport stratification_suite_matrix(std::size_t n, std::uint64_t seed,
                                                 std::size_t samples) {
    if (n < 1 || n > max_matrix_rank) {
      throw InvalidParams("matrix suite rank must be in [1, 4]");
    }
    if (samples < 1) {
      throw InvalidParams("samples must be >= 1");
    }
    Rng         rng(seed);
    SuiteReport rep{"matrix", n, seed, samples, {}};
    CheckResult fs_r{"full-stratification-R"}, fs_l{"full-stratification-L"};
    CheckResult eii_l{"Eii(l)", true}, eii_r{"Eii(r)", true};
    auto show = [](IntMatrix const& m) {
      std::string s = "[";
      for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
          s += (j ? "," : "") + m(i, j).str();
        }
        s += "]";
      }
      return s + "]";
    };
    for (std::size_t k = 0; k < samples; ++k) {
      IntMatrix   alpha = random_int_matrix(rng, n);
      IntMatrix   beta  = random_int_matrix(rng, n);
      std::string pair  = "alpha=" + show(alpha) + " beta=" + show(beta);
      fs_r.record(greens_leq(Side::Rstar, alpha, beta)
                      == greens_leq(Side::R, lift(alpha), lift(beta)),
                  pair);
      fs_l.record(greens_leq(Side::Lstar, alpha, beta)
                      == greens_leq(Side::L, lift(alpha), lift(beta)),
                  pair);
      // Diagram order "beta then gamma" is the matrix gamma * beta. Clearing
      // denominators of a rational solution gives gamma with
      // gamma beta = d alpha.
      if (greens_leq(Side::Rstar, alpha, beta)) {
        auto sol = solve(to_rat(beta).transpose(), to_rat(alpha).transpose());
        bool ok  = false;
        if (sol) {
          RatMatrix g0 = sol->transpose();
          IntMatrix g  = to_int(Rat(denominator_lcm(g0)) * g0);
          IntMatrix bg = g * beta;
          ok = greens_leq(Side::Rstar, alpha, bg) && greens_leq(Side::Rstar, bg, alpha);
        }
        eii_r.record(ok, pair);
      }
      if (greens_leq(Side::Lstar, alpha, beta)) {
        auto sol = solve(to_rat(beta), to_rat(alpha));
        bool ok  = false;
        if (sol) {
          IntMatrix g  = to_int(Rat(denominator_lcm(*sol)) * *sol);
          IntMatrix gb = beta * g;
          ok = greens_leq(Side::Lstar, alpha, gb) && greens_leq(Side::Lstar, gb, alpha);
        }
        eii_l.record(ok, pair);
      }
    }
    rep.checks = {fs_r, fs_l, eii_l, eii_r};
    return rep;
  }

  inline SuiteReport stratification_suite(std::string const& backend, std::size_t n,
                                          std::uint64_t seed, std::size_t samples) {
    if (backend == "act") {
      return stratification_suite_act(n, seed, samples);
    }
    if (backend == "matrix") {
      return stratification_suite_matrix(n, seed, samples);
    }
    throw InvalidParams("unknown backend '" + backend + "'");
  }

}  // namespace indalg

#pragma once

// The Z-module backend: B = Z^n with End(B) = n x n integer matrices, and
// its quotient algebra A = Q^n with End(A) = rational matrices. Matrices act
// on column vectors, so a composite "first x, then y" is the matrix y * x.
// Green's preorders in this convention:
//   alpha <=_R beta  iff  alpha = gamma beta  iff  ker beta  in ker alpha
//   alpha <=_L beta  iff  alpha = beta gamma  iff  col alpha in col beta

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "indalg/error.hpp"
#include "indalg/linalg.hpp"
#include "indalg/random.hpp"

namespace indalg {

  inline constexpr std::size_t max_matrix_rank = 4;

  enum class Side { R, L, Rstar, Lstar };

  inline std::string to_string(Side s) {
    switch (s) {
      case Side::R:
        return "R";
      case Side::L:
        return "L";
      case Side::Rstar:
        return "Rstar";
      case Side::Lstar:
        return "Lstar";
    }
    return "?";
  }

  inline Side side_from_string(std::string const& s) {
    for (auto x : {Side::R, Side::L, Side::Rstar, Side::Lstar}) {
      if (to_string(x) == s) {
        return x;
      }
    }
    throw InvalidParams("unknown side '" + s + "'");
  }

  inline bool is_starred(Side s) {
    return s == Side::Rstar || s == Side::Lstar;
  }

  namespace detail {
    inline void check_square(RatMatrix const& m) {
      if (!m.square() || m.rows() < 1 || m.rows() > max_matrix_rank) {
        throw InvalidParams("endomorphisms are square matrices of size 1..4");
      }
    }
    inline void check_square(IntMatrix const& m) {
      if (!m.square() || m.rows() < 1 || m.rows() > max_matrix_rank) {
        throw InvalidParams("endomorphisms are square matrices of size 1..4");
      }
    }
  }  // namespace detail

  // -------------------------------------------------------------------
  // Quotient elements

  // [d, v] with d > 0 and gcd(d, v) = 1, standing for v / d in Q^n.
  struct MatQuot {
    Int              d;
    std::vector<Int> v;

    friend bool operator==(MatQuot const&, MatQuot const&) = default;
  };

  // (t, b) in T x B with T = Z \ {0}.
  struct MatPair {
    Int              t;
    std::vector<Int> b;
  };

  inline MatQuot canonical(MatPair const& p) {
    if (p.t == 0) {
      throw InvalidParams("the T-component must be a nonzero integer");
    }
    Int g = abs(p.t);
    for (auto const& x : p.b) {
      g = gcd(g, x);
    }
    if (p.t < 0) {
      g = -g;
    }
    MatQuot q{p.t / g, {}};
    for (auto const& x : p.b) {
      q.v.push_back(x / g);
    }
    return q;
  }

  struct QuotientWitness {
    bool equal = false;
    Int  x, y;  // x a = y b and x c = y d when equal
  };

  // (a, c) ~ (b, d) iff x a = y b and x c = y d for some x, y in T. Since T
  // is commutative, x = b / g and y = a / g with g = gcd(a, b) suffice.
  inline QuotientWitness quotient_eq(MatPair const& p, MatPair const& q) {
    if (p.t == 0 || q.t == 0) {
      throw InvalidParams("the T-component must be a nonzero integer");
    }
    if (p.b.size() != q.b.size()) {
      throw InvalidParams("vectors of different length");
    }
    Int             g = gcd(p.t, q.t);
    QuotientWitness w{true, q.t / g, p.t / g};
    for (std::size_t i = 0; i < p.b.size(); ++i) {
      if (w.x * p.b[i] != w.y * q.b[i]) {
        w.equal = false;
      }
    }
    return w;
  }

  inline MatQuot embed(std::vector<Int> const& b) {
    return canonical({Int(1), b});
  }

  inline std::vector<Rat> value(MatQuot const& q) {
    std::vector<Rat> out;
    for (auto const& x : q.v) {
      out.emplace_back(x, q.d);
    }
    return out;
  }

  inline RatMatrix lift(IntMatrix const& theta) {
    detail::check_square(theta);
    return to_rat(theta);
  }

  // [a, b] theta-bar = [a, b theta].
  inline MatQuot apply(IntMatrix const& theta, MatQuot const& q) {
    IntMatrix col(q.v.size(), 1);
    for (std::size_t i = 0; i < q.v.size(); ++i) {
      col(i, 0) = q.v[i];
    }
    IntMatrix        img = theta * col;
    std::vector<Int> b;
    for (std::size_t i = 0; i < img.rows(); ++i) {
      b.push_back(img(i, 0));
    }
    return canonical({q.d, b});
  }

  // -------------------------------------------------------------------
  // Green's preorders

  // Smallest pure closed submodule containing the given vectors (columns).
  inline IntMatrix pc_closure(IntMatrix const& gens) {
    return saturation(gens);
  }

  inline bool greens_leq(Side side, RatMatrix const& alpha, RatMatrix const& beta) {
    detail::check_square(alpha);
    detail::check_square(beta);
    if (alpha.rows() != beta.rows()) {
      throw InvalidParams("matrices of different size");
    }
    switch (side) {
      case Side::R:
        return null_space_contained(beta, alpha);
      case Side::L:
        return column_space_contained(alpha, beta);
      default:
        throw MixedBackends("starred relations are defined on integer endomorphisms");
    }
  }

  inline bool greens_leq(Side side, IntMatrix const& alpha, IntMatrix const& beta) {
    detail::check_square(alpha);
    detail::check_square(beta);
    if (alpha.rows() != beta.rows()) {
      throw InvalidParams("matrices of different size");
    }
    switch (side) {
      case Side::Rstar:
        return (alpha * integer_kernel(beta)).is_zero();
      case Side::Lstar:
        return lattice_contained(pc_closure(alpha), pc_closure(beta));
      default:
        return greens_leq(side, to_rat(alpha), to_rat(beta));
    }
  }

  // -------------------------------------------------------------------
  // Decompositions

  struct LeftDecomposition {
    IntMatrix a, b;  // alpha = a# b
  };

  struct RightDecomposition {
    IntMatrix gamma, beta;  // alpha = gamma beta^-1
  };

  // a = d I, b = d alpha with d the lcm of the denominators.
  inline LeftDecomposition left_decompose(RatMatrix const& alpha) {
    detail::check_square(alpha);
    Rat d(denominator_lcm(alpha));
    return {to_int(d * RatMatrix::identity(alpha.rows())), to_int(d * alpha)};
  }

  // a = m E, b = m alpha where E is the idempotent onto col(alpha) along the
  // span of the standard vectors outside a set P of rows on which the
  // column basis C is invertible: E = C C_P^-1 S_P.
  inline LeftDecomposition straight_left_decompose(RatMatrix const& alpha) {
    detail::check_square(alpha);
    std::size_t const n = alpha.rows();
    RatMatrix         C = column_space(alpha);
    RatMatrix         E(n, n);
    if (C.cols() > 0) {
      auto      P = rref(C.transpose()).pivots;
      RatMatrix CP(P.size(), P.size());
      RatMatrix SP(P.size(), n);
      for (std::size_t i = 0; i < P.size(); ++i) {
        for (std::size_t j = 0; j < P.size(); ++j) {
          CP(i, j) = C(P[i], j);
        }
        SP(i, P[i]) = 1;
      }
      E = C * (*inverse(CP)) * SP;
    }
    Rat m(boost::multiprecision::lcm(denominator_lcm(E), denominator_lcm(alpha)));
    return {to_int(m * E), to_int(m * alpha)};
  }

  // beta = d I, gamma = d alpha: beta is a unit of End(A).
  inline RightDecomposition right_decompose(RatMatrix const& alpha) {
    detail::check_square(alpha);
    Rat d(denominator_lcm(alpha));
    return {to_int(d * alpha), to_int(d * RatMatrix::identity(alpha.rows()))};
  }

  // a# b as a matrix product.
  inline RatMatrix recompose(LeftDecomposition const& l) {
    return group_inverse(to_rat(l.a)) * to_rat(l.b);
  }

  inline RatMatrix recompose(RightDecomposition const& r) {
    return to_rat(r.gamma) * *inverse(to_rat(r.beta));
  }

  // -------------------------------------------------------------------
  // Sampling

  // Entries p/q with p in [-9, 9] and q in [-9, 9] \ {0}. About a third of
  // the samples are products with a thin factor so that singular matrices
  // and comparable pairs show up.
  inline RatMatrix random_rat_matrix(Rng& rng, std::size_t n) {
    auto entry = [&] {
      auto p = rng.range(-9, 9);
      auto q = rng.range(-9, 8);
      if (q >= 0) {
        ++q;
      }
      return make_rat(p, q);
    };
    auto dense = [&](std::size_t r, std::size_t c) {
      RatMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          m(i, j) = entry();
        }
      }
      return m;
    };
    if (rng.below(3) == 0) {
      std::size_t k = rng.below(n);
      if (k == 0) {
        return RatMatrix(n, n);
      }
      return dense(n, k) * dense(k, n);
    }
    return dense(n, n);
  }

  // Entries in [-3, 3]; thin products as above.
  inline IntMatrix random_int_matrix(Rng& rng, std::size_t n) {
    auto dense = [&](std::size_t r, std::size_t c, int bound) {
      IntMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
          m(i, j) = rng.range(-bound, bound);
        }
      }
      return m;
    };
    if (rng.below(2) == 0) {
      std::size_t k = rng.below(n + 1);
      if (k == 0) {
        return IntMatrix(n, n);
      }
      return dense(n, k, 2) * dense(k, n, 2);
    }
    return dense(n, n, 3);
  }

}  // namespace indalg

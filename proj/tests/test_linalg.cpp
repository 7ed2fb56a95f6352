#include <catch_amalgamated.hpp>

#include <bit>
#include <vector>

#include "indalg/linalg.hpp"
#include "indalg/matrix_orders.hpp"
#include "indalg/random.hpp"

using namespace indalg;

namespace {
  // Oracles: cofactor expansion, and rank as the largest nonvanishing minor.
  template <typename T>
  T laplace(Matrix<T> const& m) {
    std::size_t n = m.rows();
    if (n == 0) {
      return T(1);
    }
    T det = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<T> minor(n - 1, n - 1);
      for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t k = 0, c = 0; k < n; ++k) {
          if (k != j) {
            minor(i - 1, c++) = m(i, k);
          }
        }
      }
      T term = m(0, j) * laplace(minor);
      det += j % 2 ? T(-term) : term;
    }
    return det;
  }

  template <typename T>
  std::size_t minor_rank(Matrix<T> const& m) {
    std::size_t best = 0;
    std::size_t R = m.rows(), C = m.cols();
    for (unsigned rs = 1; rs < (1u << R); ++rs) {
      for (unsigned cs = 1; cs < (1u << C); ++cs) {
        std::size_t k = std::popcount(rs);
        if (k != static_cast<std::size_t>(std::popcount(cs)) || k <= best) {
          continue;
        }
        Matrix<T> sub(k, k);
        for (std::size_t i = 0, a = 0; i < R; ++i) {
          if (!(rs >> i & 1)) {
            continue;
          }
          for (std::size_t j = 0, b = 0; j < C; ++j) {
            if (cs >> j & 1) {
              sub(a, b++) = m(i, j);
            }
          }
          ++a;
        }
        if (laplace(sub) != 0) {
          best = k;
        }
      }
    }
    return best;
  }

  IntMatrix random_rect(Rng& rng, std::size_t r, std::size_t c, int bound) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        m(i, j) = rng.range(-bound, bound);
      }
    }
    return m;
  }

  IntMatrix col(std::vector<Int> const& v) {
    IntMatrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      m(i, 0) = v[i];
    }
    return m;
  }
}  // namespace

TEST_CASE("rational parsing", "[linalg]") {
  CHECK(parse_rational("3/6") == Rat(1, 2));
  CHECK(parse_rational("-4") == Rat(-4));
  CHECK(to_string(Rat(-2, 4)) == "-1/2");
  CHECK(to_string(Rat(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("bareiss examples", "[linalg]") {
  CHECK(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{2, 4}, {1, 2}}) == 0);
  CHECK(determinant(IntMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, 5}}) == 30);
  CHECK(rank(IntMatrix{{1, 2, 3}, {2, 4, 6}}) == 1);
  CHECK(rank(IntMatrix(3, 3)) == 0);
  CHECK(rank(RatMatrix{{Rat(1, 2), Rat(1, 3)}, {Rat(3, 2), Rat(1)}}) == 1);
  CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), InvalidParams);
}

TEST_CASE("determinant and rank agree with cofactor oracles", "[linalg][oracle]") {
  Rng rng(31);
  for (int k = 0; k < 400; ++k) {
    std::size_t n = 1 + rng.below(4);
    IntMatrix   m = random_int_matrix(rng, n);
    REQUIRE(determinant(m) == laplace(m));
    REQUIRE(rank(m) == minor_rank(m));
    RatMatrix q = random_rat_matrix(rng, n);
    REQUIRE(rank(q) == minor_rank(q));
    IntMatrix r = random_rect(rng, 1 + rng.below(4), 1 + rng.below(4), 2);
    REQUIRE(rank(r) == minor_rank(r));
  }
}

TEST_CASE("rref, null space and solve", "[linalg]") {
  auto r = rref(RatMatrix{{2, 4, 2}, {1, 2, 3}});
  CHECK(r.pivots == std::vector<std::size_t>{0, 2});
  CHECK(r.reduced == RatMatrix{{1, 2, 0}, {0, 0, 1}});
  CHECK(null_space(RatMatrix{{2, 4, 2}, {1, 2, 3}}) == RatMatrix{{-2}, {1}, {0}});
  CHECK(null_space(RatMatrix::identity(2)).cols() == 0);

  auto x = solve(RatMatrix{{1, 1}, {1, -1}}, RatMatrix{{3}, {1}});
  REQUIRE(x);
  CHECK(*x == RatMatrix{{2}, {1}});
  CHECK_FALSE(solve(RatMatrix{{1, 1}, {2, 2}}, RatMatrix{{1}, {3}}));

  CHECK(*inverse(RatMatrix{{2, 1}, {1, 1}}) == RatMatrix{{1, -1}, {-1, 2}});
  CHECK_FALSE(inverse(RatMatrix{{1, 2}, {2, 4}}));

  Rng rng(32);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 1 + rng.below(4);
    RatMatrix   m = random_rat_matrix(rng, n);
    RatMatrix   N = null_space(m);
    REQUIRE(N.cols() + rank(m) == n);
    REQUIRE((m * N).is_zero());
    if (auto inv = inverse(m)) {
      REQUIRE(m * *inv == RatMatrix::identity(n));
      REQUIRE(laplace(m) != 0);
    } else {
      REQUIRE(laplace(m) == 0);
    }
    RatMatrix b = m * random_rat_matrix(rng, n).column(0);
    auto      s = solve(m, b);
    REQUIRE(s);
    REQUIRE(m * *s == b);
  }
}

TEST_CASE("group inverse", "[linalg]") {
  CHECK(group_inverse(RatMatrix{{2, 0}, {0, 0}}) == RatMatrix{{Rat(1, 2), 0}, {0, 0}});
  CHECK(group_inverse(RatMatrix{{2, 1}, {1, 1}}) == RatMatrix{{1, -1}, {-1, 2}});
  CHECK(group_inverse(RatMatrix(2, 2)) == RatMatrix(2, 2));
  CHECK_THROWS_AS(group_inverse(RatMatrix{{0, 1}, {0, 0}}), NoGroupInverse);

  Rng rng(33);
  int defined = 0;
  for (int k = 0; k < 400; ++k) {
    std::size_t n = 1 + rng.below(4);
    RatMatrix   s = random_rat_matrix(rng, n);
    if (rank(s * s) != rank(s)) {
      REQUIRE_THROWS_AS(group_inverse(s), NoGroupInverse);
      continue;
    }
    ++defined;
    RatMatrix g = group_inverse(s);
    REQUIRE(s * g * s == s);
    REQUIRE(g * s * g == g);
    REQUIRE(s * g == g * s);
  }
  CHECK(defined > 200);
}

TEST_CASE("column HNF and integer kernels", "[linalg]") {
  auto h = column_hnf(IntMatrix{{4, 6}});
  CHECK(h.rank == 1);
  CHECK(h.h == IntMatrix{{2, 0}});
  CHECK(h.h == IntMatrix{{4, 6}} * h.u);

  IntMatrix k = integer_kernel(IntMatrix{{2, 3}});
  REQUIRE(k.cols() == 1);
  CHECK(((k(0, 0) == 3 && k(1, 0) == -2) || (k(0, 0) == -3 && k(1, 0) == 2)));

  Rng rng(34);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
    IntMatrix   m = random_rect(rng, r, c, 4);
    auto        H = column_hnf(m);
    REQUIRE(H.h == m * H.u);
    REQUIRE(abs(laplace(H.u)) == 1);
    REQUIRE(H.rank == minor_rank(m));
    for (std::size_t j = H.rank; j < c; ++j) {
      REQUIRE(H.h.column(j).is_zero());
    }
    IntMatrix K = integer_kernel(m);
    REQUIRE(K.cols() == c - H.rank);
    REQUIRE((m * K).is_zero());
    // Z-basis: any integer kernel vector in a box is an integer combination.
    for (int s = 0; s < 20; ++s) {
      IntMatrix v = random_rect(rng, c, 1, 3);
      if ((m * v).is_zero()) {
        REQUIRE(lattice_contains(K, v));
      }
    }
  }
}

TEST_CASE("lattice membership agrees with the adjugate oracle", "[linalg][oracle]") {
  Rng rng(35);
  for (int t = 0; t < 500; ++t) {
    IntMatrix B = random_rect(rng, 2, 2, 4);
    Int       d = laplace(B);
    if (d == 0) {
      continue;
    }
    IntMatrix adj{{B(1, 1), -B(0, 1)}, {-B(1, 0), B(0, 0)}};
    IntMatrix v = random_rect(rng, 2, 1, 6);
    IntMatrix c = adj * v;
    bool      in = c(0, 0) % d == 0 && c(1, 0) % d == 0;
    REQUIRE(lattice_contains(B, v) == in);
  }
}

TEST_CASE("saturation", "[linalg]") {
  // (2, 0) saturates to Z(1, 0).
  IntMatrix s = saturation(IntMatrix{{2}, {0}});
  CHECK(s == IntMatrix{{1}, {0}});
  CHECK(saturation(IntMatrix{{2, 0}, {0, 3}}) == IntMatrix::identity(2));
  CHECK(saturation(IntMatrix(2, 1)).cols() == 0);

  // Oracle: v is in the saturation iff v lies in the rational span.
  Rng rng(36);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 2 + rng.below(2);
    IntMatrix   m = random_rect(rng, n, 1 + rng.below(2), 3);
    IntMatrix   S = saturation(m);
    REQUIRE(minor_rank(S) == S.cols());
    REQUIRE(S.cols() == minor_rank(m));
    REQUIRE(lattice_contained(m, S));
    for (int k = 0; k < 25; ++k) {
      IntMatrix v = random_rect(rng, n, 1, 3);
      bool      in_span = minor_rank(m.hconcat(v)) == minor_rank(m);
      REQUIRE(lattice_contains(S, v) == in_span);
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
      IntMatrix v = m.column(j);
      REQUIRE(lattice_contains(S, v));
    }
  }
  CHECK(lattice_contains(saturation(IntMatrix{{2}, {4}}), col({1, 2})));
  CHECK_FALSE(lattice_contains(IntMatrix{{2}, {4}}, col({1, 2})));
}

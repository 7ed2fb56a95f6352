#pragma once

// Exact matrices over Z and Q: fraction-free elimination, reduced row echelon
// form, null and column spaces, linear solving, column Hermite normal form,
// integer kernels, lattice saturation and group inverses.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "indalg/error.hpp"

namespace indalg {

  using Int = boost::multiprecision::cpp_int;
  using Rat = boost::multiprecision::cpp_rational;

  inline std::string to_string(Rat const& r) {
    if (denominator(r) == 1) {
      return numerator(r).str();
    }
    return numerator(r).str() + "/" + denominator(r).str();
  }

  // p / q for any q != 0; the two-argument constructor wants q > 0.
  inline Rat make_rat(Int p, Int q) {
    if (q < 0) {
      p = -p;
      q = -q;
    }
    return Rat(p, q);
  }

  inline Rat parse_rational(std::string_view s) {
    auto digits = [](std::string_view t) {
      if (!t.empty() && (t.front() == '-' || t.front() == '+')) {
        t.remove_prefix(1);
      }
      if (t.empty() || t.size() > 200) {
        return false;
      }
      for (char c : t) {
        if (c < '0' || c > '9') {
          return false;
        }
      }
      return true;
    };
    auto slash = s.find('/');
    auto num   = s.substr(0, slash);
    if (!digits(num)) {
      throw ParseError("bad rational '" + std::string(s) + "'");
    }
    Int p(std::string(num.front() == '+' ? num.substr(1) : num));
    if (slash == std::string_view::npos) {
      return Rat(p);
    }
    auto den = s.substr(slash + 1);
    if (!digits(den)) {
      throw ParseError("bad rational '" + std::string(s) + "'");
    }
    Int q(std::string(den.front() == '+' ? den.substr(1) : den));
    if (q == 0) {
      throw ParseError("zero denominator in '" + std::string(s) + "'");
    }
    return make_rat(p, q);
  }

  template <typename T>
  class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
      rows_ = rows.size();
      cols_ = rows_ == 0 ? 0 : rows.begin()->size();
      for (auto const& r : rows) {
        if (r.size() != cols_) {
          throw InvalidParams("ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
      }
    }

    static Matrix identity(std::size_t n) {
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = T(1);
      }
      return m;
    }

    std::size_t rows() const noexcept {
      return rows_;
    }
    std::size_t cols() const noexcept {
      return cols_;
    }
    bool square() const noexcept {
      return rows_ == cols_;
    }

    T& operator()(std::size_t i, std::size_t j) {
      return data_[i * cols_ + j];
    }
    T const& operator()(std::size_t i, std::size_t j) const {
      return data_[i * cols_ + j];
    }

    bool is_zero() const {
      for (auto const& x : data_) {
        if (x != 0) {
          return false;
        }
      }
      return true;
    }

    Matrix transpose() const {
      Matrix t(cols_, rows_);
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
          t(j, i) = (*this)(i, j);
        }
      }
      return t;
    }

    Matrix column(std::size_t j) const {
      Matrix c(rows_, 1);
      for (std::size_t i = 0; i < rows_; ++i) {
        c(i, 0) = (*this)(i, j);
      }
      return c;
    }

    Matrix columns(std::vector<std::size_t> const& js) const {
      Matrix c(rows_, js.size());
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < js.size(); ++k) {
          c(i, k) = (*this)(i, js[k]);
        }
      }
      return c;
    }

    // [this | other]
    Matrix hconcat(Matrix const& other) const {
      if (rows_ != other.rows_) {
        throw InvalidParams("hconcat: row counts differ");
      }
      Matrix c(rows_, cols_ + other.cols_);
      for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
          c(i, j) = (*this)(i, j);
        }
        for (std::size_t j = 0; j < other.cols_; ++j) {
          c(i, cols_ + j) = other(i, j);
        }
      }
      return c;
    }

    friend Matrix operator*(Matrix const& a, Matrix const& b) {
      if (a.cols_ != b.rows_) {
        throw InvalidParams("matrix product: dimension mismatch");
      }
      Matrix c(a.rows_, b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
          if (a(i, k) == 0) {
            continue;
          }
          for (std::size_t j = 0; j < b.cols_; ++j) {
            c(i, j) += a(i, k) * b(k, j);
          }
        }
      }
      return c;
    }

    friend Matrix operator*(T const& s, Matrix m) {
      for (auto& x : m.data_) {
        x *= s;
      }
      return m;
    }

    friend Matrix operator+(Matrix a, Matrix const& b) {
      if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        throw InvalidParams("matrix sum: dimension mismatch");
      }
      for (std::size_t k = 0; k < a.data_.size(); ++k) {
        a.data_[k] += b.data_[k];
      }
      return a;
    }

    friend Matrix operator-(Matrix a, Matrix const& b) {
      return a + T(-1) * b;
    }

    friend bool operator==(Matrix const&, Matrix const&) = default;

    std::vector<T> const& data() const noexcept {
      return data_;
    }

   private:
    std::size_t    rows_ = 0, cols_ = 0;
    std::vector<T> data_;
  };

  using IntMatrix = Matrix<Int>;
  using RatMatrix = Matrix<Rat>;

  inline RatMatrix to_rat(IntMatrix const& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        r(i, j) = Rat(m(i, j));
      }
    }
    return r;
  }

  inline bool is_integral(RatMatrix const& m) {
    for (auto const& x : m.data()) {
      if (denominator(x) != 1) {
        return false;
      }
    }
    return true;
  }

  inline IntMatrix to_int(RatMatrix const& m) {
    if (!is_integral(m)) {
      throw InvalidParams("matrix has non-integral entries");
    }
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        r(i, j) = numerator(m(i, j));
      }
    }
    return r;
  }

  // Least common multiple of all entry denominators.
  inline Int denominator_lcm(RatMatrix const& m) {
    Int d = 1;
    for (auto const& x : m.data()) {
      d = boost::multiprecision::lcm(d, denominator(x));
    }
    return d;
  }

  // ---------------------------------------------------------------------
  // Fraction-free elimination

  struct BareissResult {
    IntMatrix                echelon;
    std::vector<std::size_t> pivots;  // pivot column per nonzero row
    Int                      det;     // square input only; 0 if singular
  };

  // Bareiss elimination; every intermediate entry is a minor of the input,
  // so all divisions are exact.
  inline BareissResult bareiss(IntMatrix m) {
    std::size_t const rows = m.rows(), cols = m.cols();
    BareissResult     r;
    Int               prev = 1;
    std::size_t       row  = 0;
    int               sign = 1;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
      std::size_t p = row;
      while (p < rows && m(p, col) == 0) {
        ++p;
      }
      if (p == rows) {
        continue;
      }
      if (p != row) {
        for (std::size_t j = 0; j < cols; ++j) {
          std::swap(m(p, j), m(row, j));
        }
        sign = -sign;
      }
      for (std::size_t i = row + 1; i < rows; ++i) {
        for (std::size_t j = col + 1; j < cols; ++j) {
          m(i, j) = (m(row, col) * m(i, j) - m(i, col) * m(row, j)) / prev;
        }
        m(i, col) = 0;
      }
      prev = m(row, col);
      r.pivots.push_back(col);
      ++row;
    }
    if (rows == cols) {
      r.det = row == rows && rows > 0 ? Int(sign) * m(rows - 1, cols - 1) : Int(rows == 0);
    }
    r.echelon = std::move(m);
    return r;
  }

  // Rows scaled by their denominator lcm; same row space, integer entries.
  inline IntMatrix clear_row_denominators(RatMatrix const& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Int d = 1;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        d = boost::multiprecision::lcm(d, denominator(m(i, j)));
      }
      for (std::size_t j = 0; j < m.cols(); ++j) {
        out(i, j) = numerator(m(i, j)) * (d / denominator(m(i, j)));
      }
    }
    return out;
  }

  inline std::size_t rank(IntMatrix const& m) {
    return bareiss(m).pivots.size();
  }

  inline std::size_t rank(RatMatrix const& m) {
    return bareiss(clear_row_denominators(m)).pivots.size();
  }

  inline Int determinant(IntMatrix const& m) {
    if (!m.square()) {
      throw InvalidParams("determinant of a non-square matrix");
    }
    return bareiss(m).det;
  }

  // ---------------------------------------------------------------------
  // Rational elimination

  struct Rref {
    RatMatrix                reduced;
    std::vector<std::size_t> pivots;
  };

  inline Rref rref(RatMatrix m) {
    std::size_t const        rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t              row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
      std::size_t p = row;
      while (p < rows && m(p, col) == 0) {
        ++p;
      }
      if (p == rows) {
        continue;
      }
      for (std::size_t j = 0; j < cols; ++j) {
        std::swap(m(p, j), m(row, j));
      }
      Rat inv = 1 / m(row, col);
      for (std::size_t j = 0; j < cols; ++j) {
        m(row, j) *= inv;
      }
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == row || m(i, col) == 0) {
          continue;
        }
        Rat f = m(i, col);
        for (std::size_t j = 0; j < cols; ++j) {
          m(i, j) -= f * m(row, j);
        }
      }
      pivots.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(pivots)};
  }

  // Basis of {x : m x = 0} as columns.
  inline RatMatrix null_space(RatMatrix const& m) {
    auto [r, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) {
      is_pivot[p] = true;
    }
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!is_pivot[j]) {
        free.push_back(j);
      }
    }
    RatMatrix basis(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
      basis(free[k], k) = 1;
      for (std::size_t i = 0; i < pivots.size(); ++i) {
        basis(pivots[i], k) = -r(i, free[k]);
      }
    }
    return basis;
  }

  // Pivot columns of m: a basis of its column space.
  inline RatMatrix column_space(RatMatrix const& m) {
    return m.columns(rref(m).pivots);
  }

  // Some x with a x = b, if one exists.
  inline std::optional<RatMatrix> solve(RatMatrix const& a, RatMatrix const& b) {
    if (a.rows() != b.rows()) {
      throw InvalidParams("solve: row counts differ");
    }
    auto [r, pivots] = rref(a.hconcat(b));
    std::size_t const n = a.cols();
    for (auto p : pivots) {
      if (p >= n) {
        return std::nullopt;
      }
    }
    RatMatrix x(n, b.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) {
        x(pivots[i], j) = r(i, n + j);
      }
    }
    return x;
  }

  inline std::optional<RatMatrix> inverse(RatMatrix const& m) {
    if (!m.square()) {
      throw InvalidParams("inverse of a non-square matrix");
    }
    if (rank(m) != m.rows()) {
      return std::nullopt;
    }
    return solve(m, RatMatrix::identity(m.rows()));
  }

  // col(a) subset of col(b) over Q.
  inline bool column_space_contained(RatMatrix const& a, RatMatrix const& b) {
    return rank(b.hconcat(a)) == rank(b);
  }

  // ker(b) subset of ker(a) over Q.
  inline bool null_space_contained(RatMatrix const& b, RatMatrix const& a) {
    return (a * null_space(b)).is_zero();
  }

  // Group inverse via a full-rank factorisation s = F G:
  // s# = F (G F)^-2 G, defined iff G F is invertible iff rank s = rank s^2.
  inline RatMatrix group_inverse(RatMatrix const& s) {
    if (!s.square()) {
      throw InvalidParams("group inverse of a non-square matrix");
    }
    auto [r, pivots] = rref(s);
    std::size_t const rk = pivots.size();
    if (rk == 0) {
      return RatMatrix(s.rows(), s.cols());
    }
    RatMatrix F = s.columns(pivots);
    RatMatrix G(rk, s.cols());
    for (std::size_t i = 0; i < rk; ++i) {
      for (std::size_t j = 0; j < s.cols(); ++j) {
        G(i, j) = r(i, j);
      }
    }
    auto inv = inverse(G * F);
    if (!inv) {
      throw NoGroupInverse("rank(s^2) < rank(s): s lies in no subgroup");
    }
    return F * (*inv * *inv) * G;
  }

  // ---------------------------------------------------------------------
  // Integer lattices

  struct ColumnHnf {
    IntMatrix   h;     // m * u, column Hermite normal form
    IntMatrix   u;     // unimodular
    std::size_t rank;  // columns [0, rank) of h are nonzero
  };

  // Column-style HNF: unimodular column operations bring m into lower
  // echelon form with positive pivots and the entries left of each pivot
  // reduced into [0, pivot).
  inline ColumnHnf column_hnf(IntMatrix m) {
    std::size_t const rows = m.rows(), cols = m.cols();
    IntMatrix         u    = IntMatrix::identity(cols);
    auto col_op = [&](std::size_t a, std::size_t b, Int const& p, Int const& q,
                      Int const& r, Int const& s) {
      // (col a, col b) <- (p a + q b, r a + s b), with p s - q r = +-1.
      for (IntMatrix* x : {&m, &u}) {
        for (std::size_t i = 0; i < x->rows(); ++i) {
          Int va = (*x)(i, a), vb = (*x)(i, b);
          (*x)(i, a) = p * va + q * vb;
          (*x)(i, b) = r * va + s * vb;
        }
      }
    };
    std::size_t c = 0;
    for (std::size_t i = 0; i < rows && c < cols; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (m(i, j) == 0) {
          continue;
        }
        // Extended gcd step between columns c and j.
        Int a = m(i, c), b = m(i, j);
        Int x0 = 1, y0 = 0, x1 = 0, y1 = 1, ra = a, rb = b;
        while (rb != 0) {
          Int q  = ra / rb;
          Int t  = ra - q * rb;
          ra     = rb;
          rb     = t;
          Int tx = x0 - q * x1;
          x0     = x1;
          x1     = tx;
          Int ty = y0 - q * y1;
          y0     = y1;
          y1     = ty;
        }
        // x0 a + y0 b = ra = gcd (up to sign); (x1, y1) annihilates.
        col_op(c, j, x0, y0, x1, y1);
      }
      if (m(i, c) == 0) {
        continue;
      }
      if (m(i, c) < 0) {
        for (IntMatrix* x : {&m, &u}) {
          for (std::size_t k = 0; k < x->rows(); ++k) {
            (*x)(k, c) = -(*x)(k, c);
          }
        }
      }
      for (std::size_t j = 0; j < c; ++j) {
        Int q = m(i, j) / m(i, c);
        if (m(i, j) - q * m(i, c) < 0) {
          q -= 1;
        }
        if (q != 0) {
          col_op(j, c, 1, -q, 0, 1);
        }
      }
      ++c;
    }
    return {std::move(m), std::move(u), c};
  }

  // Z-basis (as columns) of {x in Z^k : m x = 0}.
  inline IntMatrix integer_kernel(IntMatrix const& m) {
    auto h = column_hnf(m);
    std::vector<std::size_t> zero;
    for (std::size_t j = h.rank; j < m.cols(); ++j) {
      zero.push_back(j);
    }
    return h.u.columns(zero);
  }

  // Canonical basis (column HNF, nonzero columns) of the lattice spanned by
  // the columns of m.
  inline IntMatrix lattice_basis(IntMatrix const& m) {
    auto h = column_hnf(m);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < h.rank; ++j) {
      keep.push_back(j);
    }
    return h.h.columns(keep);
  }

  // Saturation {v in Z^n : k v in span_Z(columns of m) for some k != 0} as
  // the kernel of the kernel: v is in it iff every integer vector orthogonal
  // to the columns of m is orthogonal to v.
  inline IntMatrix saturation(IntMatrix const& m) {
    std::size_t const n = m.rows();
    IntMatrix         k = integer_kernel(m.transpose());
    if (k.cols() == 0) {
      return IntMatrix::identity(n);
    }
    return lattice_basis(integer_kernel(k.transpose()));
  }

  // v (column) in span_Z(columns of basis)?
  inline bool lattice_contains(IntMatrix const& basis, IntMatrix const& v) {
    IntMatrix h = lattice_basis(basis);
    IntMatrix r = v;
    std::size_t row = 0;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      while (row < h.rows() && h(row, j) == 0) {
        if (r(row, 0) != 0) {
          return false;
        }
        ++row;
      }
      if (row == h.rows()) {
        break;
      }
      if (r(row, 0) % h(row, j) != 0) {
        return false;
      }
      Int q = r(row, 0) / h(row, j);
      for (std::size_t i = 0; i < h.rows(); ++i) {
        r(i, 0) -= q * h(i, j);
      }
      ++row;
    }
    return r.is_zero();
  }

  inline bool lattice_contained(IntMatrix const& a, IntMatrix const& b) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!lattice_contains(b, a.column(j))) {
        return false;
      }
    }
    return true;
  }

}  // namespace indalg

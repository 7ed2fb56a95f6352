#pragma once

// Finite instances of the independence-algebra types: rank 0, linear,
// affine, exceptional, group action and Q-homogeneous (field case), plus a
// semilattice negative control. Closure, exchange, unary clone, clone
// generation, distributivity witnesses and endomorphisms are all decided by
// exhaustive computation.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "indalg/error.hpp"

namespace indalg {

  using Element = std::uint8_t;
  using Table   = std::vector<Element>;
  using Subset  = std::uint64_t;  // bitmask over the carrier

  inline constexpr std::size_t max_carrier          = 64;
  inline constexpr std::size_t max_exchange_carrier = 16;
  inline constexpr std::size_t max_brute_endo       = 8;
  inline constexpr unsigned    max_clone_arity      = 3;

  // Total operation; table is row-major in the argument tuple, i.e. entry
  // ((x1 * N + x2) * N + x3) holds f(x1, x2, x3).
  struct Operation {
    std::string name;
    unsigned    arity = 0;
    Table       table;

    Element operator()(std::span<Element const> args, std::size_t n) const {
      std::size_t idx = 0;
      for (auto x : args) {
        idx = idx * n + x;
      }
      return table[idx];
    }
  };

  enum class Kind {
    rank0,
    linear,
    affine,
    exceptional,
    group_action,
    q_homog_field,
    semilattice,
  };

  inline std::string to_string(Kind k) {
    switch (k) {
      case Kind::rank0:
        return "rank0";
      case Kind::linear:
        return "linear";
      case Kind::affine:
        return "affine";
      case Kind::exceptional:
        return "exceptional";
      case Kind::group_action:
        return "group_action";
      case Kind::q_homog_field:
        return "q_homog_field";
      case Kind::semilattice:
        return "semilattice";
    }
    return "?";
  }

  inline Kind kind_from_string(std::string const& s) {
    for (auto k : {Kind::rank0, Kind::linear, Kind::affine, Kind::exceptional,
                   Kind::group_action, Kind::q_homog_field, Kind::semilattice}) {
      if (to_string(k) == s) {
        return k;
      }
    }
    throw InvalidParams("unknown algebra kind '" + s + "'");
  }

  struct FiniteAlgebra {
    std::size_t            size = 0;
    Kind                   kind = Kind::rank0;
    std::vector<Operation> ops;
    // Indices into ops of a generating set of the clone; closure and
    // endomorphism checks only need these.
    std::vector<std::size_t> generators;
    // Linear and affine instances: field order and dimension, elements are
    // vectors encoded in base q.
    unsigned q   = 0;
    unsigned dim = 0;

    Operation const* find(std::string const& name) const {
      for (auto const& op : ops) {
        if (op.name == name) {
          return &op;
        }
      }
      return nullptr;
    }
  };

  namespace detail {
    inline std::size_t ipow(std::size_t b, unsigned e) {
      std::size_t r = 1;
      while (e-- > 0) {
        r *= b;
      }
      return r;
    }

    // Calls f(tuple) for every tuple in carrier^arity, in table order.
    template <typename F>
    void for_each_tuple(std::size_t n, unsigned arity, F&& f) {
      std::vector<Element> t(arity, 0);
      std::size_t          total = ipow(n, arity);
      for (std::size_t k = 0; k < total; ++k) {
        f(std::span<Element const>(t));
        for (int pos = static_cast<int>(arity) - 1; pos >= 0; --pos) {
          if (++t[pos] < n) {
            break;
          }
          t[pos] = 0;
        }
      }
    }

    template <typename F>
    Operation tabulate(std::string name, std::size_t n, unsigned arity, F&& f) {
      Operation op{std::move(name), arity, {}};
      op.table.reserve(ipow(n, arity));
      for_each_tuple(n, arity, [&](std::span<Element const> t) {
        op.table.push_back(static_cast<Element>(f(t)));
      });
      return op;
    }

    inline void all_generators(FiniteAlgebra& a) {
      a.generators.resize(a.ops.size());
      for (std::size_t k = 0; k < a.ops.size(); ++k) {
        a.generators[k] = k;
      }
    }

    // Vectors of F_q^dim encoded as sum v_i q^i.
    struct VecSpace {
      unsigned q, dim;

      std::size_t size() const {
        return ipow(q, dim);
      }
      unsigned coord(std::size_t v, unsigned i) const {
        return static_cast<unsigned>((v / ipow(q, i)) % q);
      }
      std::size_t add(std::size_t u, std::size_t v) const {
        std::size_t r = 0;
        for (unsigned i = 0; i < dim; ++i) {
          r += ((coord(u, i) + coord(v, i)) % q) * ipow(q, i);
        }
        return r;
      }
      std::size_t scale(unsigned l, std::size_t v) const {
        std::size_t r = 0;
        for (unsigned i = 0; i < dim; ++i) {
          r += ((l * coord(v, i)) % q) * ipow(q, i);
        }
        return r;
      }
      std::vector<std::size_t> span_of(std::vector<std::size_t> const& gens) const {
        std::set<std::size_t> s{0};
        bool                  grew = true;
        while (grew) {
          grew = false;
          for (auto u : std::vector<std::size_t>(s.begin(), s.end())) {
            for (auto g : gens) {
              for (unsigned l = 1; l < q; ++l) {
                grew |= s.insert(add(u, scale(l, g))).second;
              }
            }
          }
        }
        return {s.begin(), s.end()};
      }
    };

    inline std::string vec_name(VecSpace const& V, std::size_t v) {
      if (V.dim == 1) {
        return std::to_string(v);
      }
      std::string s = "(";
      for (unsigned i = 0; i < V.dim; ++i) {
        s += (i ? "," : "") + std::to_string(V.coord(v, i));
      }
      return s + ")";
    }

    inline void check_field(unsigned q, unsigned dim) {
      if (q != 2 && q != 3 && q != 5) {
        throw InvalidParams("field order must be 2, 3 or 5");
      }
      if (dim < 1 || dim > 2) {
        throw InvalidParams("dimension must be 1 or 2");
      }
    }

    inline std::vector<std::size_t> subspace(VecSpace const& V,
                                             std::vector<std::size_t> const& span) {
      for (auto v : span) {
        if (v >= V.size()) {
          throw InvalidParams("spanning vector out of range");
        }
      }
      return V.span_of(span);
    }

    // All operations sum l_i x_i + a with arity 1..3, a in A0, and (affine)
    // sum l_i = 1.
    inline FiniteAlgebra make_vector_algebra(Kind kind, unsigned q, unsigned dim,
                                             std::vector<std::size_t> const& a0_span) {
      check_field(q, dim);
      VecSpace V{q, dim};
      auto     A0 = subspace(V, a0_span);
      FiniteAlgebra alg;
      alg.size = V.size();
      alg.kind = kind;
      alg.q    = q;
      alg.dim  = dim;
      std::size_t bytes = 0;
      for (unsigned n = 1; n <= max_clone_arity; ++n) {
        bytes += ipow(q, n) * A0.size() * ipow(alg.size, n);
      }
      if (bytes > (std::size_t{1} << 26)) {
        throw TooLarge("operation tables too large for this instance");
      }
      for (unsigned n = 1; n <= max_clone_arity; ++n) {
        std::vector<unsigned> lam(n, 0);
        for (std::size_t code = 0; code < ipow(q, n); ++code) {
          std::size_t c = code;
          unsigned    sum = 0;
          for (unsigned i = 0; i < n; ++i) {
            lam[n - 1 - i] = static_cast<unsigned>(c % q);
            c /= q;
          }
          for (auto l : lam) {
            sum += l;
          }
          if (kind == Kind::affine && sum % q != 1 % q) {
            continue;
          }
          for (auto a : A0) {
            std::string name = "f(";
            for (unsigned i = 0; i < n; ++i) {
              name += (i ? "," : "") + std::to_string(lam[i]);
            }
            name += ";" + vec_name(V, a) + ")";
            alg.ops.push_back(tabulate(name, alg.size, n,
                                       [&](std::span<Element const> x) {
                                         std::size_t r = a;
                                         for (unsigned i = 0; i < n; ++i) {
                                           r = V.add(r, V.scale(lam[i], x[i]));
                                         }
                                         return r;
                                       }));
            // Linear: + and the unary maps generate the clone. Affine: the
            // unary translations, the binary maps without translation and
            // x1 - x2 + x3 do.
            bool gen = false;
            if (kind == Kind::linear) {
              gen = n == 1 || (n == 2 && a == 0 && lam[0] == 1 && lam[1] == 1);
            } else {
              gen = n == 1 || (n == 2 && a == 0)
                    || (n == 3 && a == 0 && lam[0] == 1 && lam[1] == q - 1
                        && lam[2] == 1);
            }
            if (gen) {
              alg.generators.push_back(alg.ops.size() - 1);
            }
          }
        }
      }
      return alg;
    }

    inline std::vector<std::vector<Element>> close_group(
        std::size_t n, std::vector<std::vector<Element>> const& gens) {
      std::vector<Element> id(n);
      for (std::size_t k = 0; k < n; ++k) {
        id[k] = static_cast<Element>(k);
      }
      std::set<std::vector<Element>> G{id};
      std::vector<std::vector<Element>> todo{id};
      while (!todo.empty()) {
        auto g = todo.back();
        todo.pop_back();
        for (auto const& h : gens) {
          std::vector<Element> gh(n);
          for (std::size_t x = 0; x < n; ++x) {
            gh[x] = h[g[x]];
          }
          if (G.insert(gh).second) {
            todo.push_back(gh);
          }
        }
      }
      return {G.begin(), G.end()};
    }
  }  // namespace detail

  // Every element is a constant.
  inline FiniteAlgebra make_rank0(std::size_t size) {
    if (size < 1 || size > max_carrier) {
      throw InvalidParams("rank0 carrier size must be in [1, 64]");
    }
    FiniteAlgebra alg;
    alg.size = size;
    alg.kind = Kind::rank0;
    for (std::size_t c = 0; c < size; ++c) {
      alg.ops.push_back({"c" + std::to_string(c), 0, {static_cast<Element>(c)}});
    }
    detail::all_generators(alg);
    return alg;
  }

  inline FiniteAlgebra make_linear(unsigned q, unsigned dim,
                                   std::vector<std::size_t> const& a0_span) {
    return detail::make_vector_algebra(Kind::linear, q, dim, a0_span);
  }

  inline FiniteAlgebra make_affine(unsigned q, unsigned dim,
                                   std::vector<std::size_t> const& a0_span) {
    return detail::make_vector_algebra(Kind::affine, q, dim, a0_span);
  }

  // i = (0 1)(2 3); q returns the missing element when its arguments are
  // distinct and the repeated argument otherwise.
  inline FiniteAlgebra make_exceptional() {
    FiniteAlgebra alg;
    alg.size = 4;
    alg.kind = Kind::exceptional;
    alg.ops.push_back(detail::tabulate("i", 4, 1, [](auto x) {
      return x[0] ^ 1;
    }));
    alg.ops.push_back(detail::tabulate("q", 4, 3, [](auto x) {
      if (x[0] == x[1] || x[0] == x[2]) {
        return x[0];
      }
      if (x[1] == x[2]) {
        return x[1];
      }
      return static_cast<Element>(6 - x[0] - x[1] - x[2]);
    }));
    detail::all_generators(alg);
    return alg;
  }

  // Operations f_{g,n,i}(x) = g(x_i) and f_{a,n}(x) = a for n <= 3. The
  // group is generated by perms; every non-identity element must have all
  // its fixed points in A0 and map A0 into itself.
  inline FiniteAlgebra make_group_action(std::size_t                              size,
                                         std::vector<std::vector<Element>> const& perms,
                                         std::vector<Element> const&              a0) {
    if (size < 1 || size > max_carrier) {
      throw InvalidParams("carrier size must be in [1, 64]");
    }
    for (auto const& p : perms) {
      std::vector<bool> hit(size, false);
      if (p.size() != size) {
        throw InvalidParams("permutation has wrong length");
      }
      for (auto x : p) {
        if (x >= size || hit[x]) {
          throw InvalidParams("not a permutation");
        }
        hit[x] = true;
      }
    }
    std::set<Element> A0(a0.begin(), a0.end());
    for (auto x : A0) {
      if (x >= size) {
        throw InvalidParams("A0 element out of range");
      }
    }
    auto G = detail::close_group(size, perms);
    for (auto const& g : G) {
      bool identity = true;
      for (std::size_t x = 0; x < size; ++x) {
        identity &= g[x] == x;
      }
      if (identity) {
        continue;
      }
      for (std::size_t x = 0; x < size; ++x) {
        if (g[x] == x && !A0.contains(static_cast<Element>(x))) {
          throw InvalidParams("fixed point " + std::to_string(x)
                              + " of a non-identity group element lies outside A0");
        }
      }
      for (auto x : A0) {
        if (!A0.contains(g[x])) {
          throw InvalidParams("A0 is not invariant under the group");
        }
      }
    }
    FiniteAlgebra alg;
    alg.size = size;
    alg.kind = Kind::group_action;
    for (std::size_t k = 0; k < G.size(); ++k) {
      auto const& g = G[k];
      for (unsigned n = 1; n <= max_clone_arity; ++n) {
        for (unsigned i = 0; i < n; ++i) {
          alg.ops.push_back(detail::tabulate(
              "g" + std::to_string(k) + "[" + std::to_string(n) + ","
                  + std::to_string(i + 1) + "]",
              size, n, [&](auto x) { return g[x[i]]; }));
        }
      }
    }
    for (auto a : A0) {
      for (unsigned n = 1; n <= max_clone_arity; ++n) {
        alg.ops.push_back(detail::tabulate(
            "c" + std::to_string(a) + "[" + std::to_string(n) + "]", size, n,
            [&](auto) { return a; }));
      }
    }
    detail::all_generators(alg);
    return alg;
  }

  // Z3 acting on two 3-cycles, A0 empty.
  inline FiniteAlgebra make_group_action() {
    return make_group_action(6, {{1, 2, 0, 4, 5, 3}}, {});
  }

  // Over the prime field F_p: m_b(x, y) = x - b(x - y) for every b and
  // x - y + z. All of them satisfy f(a - b a_1, ...) = a - b f(a_1, ...).
  inline FiniteAlgebra make_q_homog_field(unsigned p) {
    if (p != 2 && p != 3 && p != 5) {
      throw InvalidParams("field order must be 2, 3 or 5");
    }
    FiniteAlgebra alg;
    alg.size = p;
    alg.kind = Kind::q_homog_field;
    for (unsigned b = 0; b < p; ++b) {
      alg.ops.push_back(detail::tabulate("m" + std::to_string(b), p, 2,
                                         [&](auto x) {
                                           return ((p + 1 - b) % p * x[0] + b * x[1]) % p;
                                         }));
    }
    alg.ops.push_back(detail::tabulate("x1-x2+x3", p, 3, [&](auto x) {
      return (x[0] + p - x[1] + x[2]) % p;
    }));
    detail::all_generators(alg);
    return alg;
  }

  // V-shaped join semilattice: 0 v 1 = 2.
  inline FiniteAlgebra make_semilattice_control() {
    FiniteAlgebra alg;
    alg.size = 3;
    alg.kind = Kind::semilattice;
    alg.ops.push_back(detail::tabulate("join", 3, 2, [](auto x) {
      return x[0] == x[1] ? x[0] : Element{2};
    }));
    detail::all_generators(alg);
    return alg;
  }

  // Chain ({0,1,2}, max); satisfies exchange.
  inline FiniteAlgebra make_max_chain() {
    FiniteAlgebra alg;
    alg.size = 3;
    alg.kind = Kind::semilattice;
    alg.ops.push_back(detail::tabulate("max", 3, 2, [](auto x) {
      return std::max(x[0], x[1]);
    }));
    detail::all_generators(alg);
    return alg;
  }

  struct InstanceParams {
    unsigned                          q    = 3;
    unsigned                          dim  = 1;
    std::vector<std::size_t>          a0;      // spanning vectors / A0 points
    std::size_t                       size = 0;  // rank0, group_action
    std::vector<std::vector<Element>> perms;     // group_action
  };

  inline FiniteAlgebra make_instance(Kind kind, InstanceParams const& p = {}) {
    switch (kind) {
      case Kind::rank0:
        return make_rank0(p.size == 0 ? 2 : p.size);
      case Kind::linear:
        return make_linear(p.q, p.dim, p.a0);
      case Kind::affine:
        return make_affine(p.q, p.dim, p.a0);
      case Kind::exceptional:
        return make_exceptional();
      case Kind::group_action: {
        if (p.perms.empty()) {
          return make_group_action();
        }
        std::vector<Element> a0(p.a0.begin(), p.a0.end());
        return make_group_action(p.size, p.perms, a0);
      }
      case Kind::q_homog_field:
        return make_q_homog_field(p.q);
      case Kind::semilattice:
        return make_semilattice_control();
    }
    throw InvalidParams("unknown kind");
  }

  // ---------------------------------------------------------------------
  // Unary clone

  struct UnaryClone {
    std::vector<Table> nonconstant;  // the monoid T; identity first
    std::vector<Table> constants;
  };

  namespace detail {
    inline std::string key(Table const& t) {
      return {t.begin(), t.end()};
    }

    // Closure of a set of k-ary functions (tables over carrier^k) under
    // composition with the given operations. Stops early once every target
    // has been produced.
    inline std::vector<Table> compose_closure(
        FiniteAlgebra const& alg, std::vector<Operation const*> const& ops,
        std::vector<Table> start, unsigned k,
        std::vector<Table> const* targets = nullptr) {
      std::size_t const               n   = alg.size;
      std::size_t const               len = ipow(n, k);
      std::unordered_set<std::string> seen;
      std::vector<Table>              known;
      for (auto& t : start) {
        if (seen.insert(key(t)).second) {
          known.push_back(std::move(t));
        }
      }
      std::unordered_set<std::string> wanted;
      if (targets) {
        for (auto const& t : *targets) {
          if (!seen.contains(key(t))) {
            wanted.insert(key(t));
          }
        }
        if (wanted.empty()) {
          return known;
        }
      }
      std::size_t          old = 0;  // known[0, old) already fully combined
      std::vector<Element> args;
      while (old < known.size()) {
        std::size_t const frontier_end = known.size();
        for (auto const* op : ops) {
          unsigned m = op->arity;
          if (m == 0) {
            if (old == 0) {
              Table t(len, op->table[0]);
              if (seen.insert(key(t)).second) {
                wanted.erase(key(t));
                known.push_back(std::move(t));
              }
            }
            continue;
          }
          std::vector<std::size_t> pick(m, 0);
          std::size_t              total = ipow(frontier_end, m);
          for (std::size_t c = 0; c < total; ++c) {
            std::size_t cc     = c;
            bool        fresh  = false;
            for (unsigned i = 0; i < m; ++i) {
              pick[m - 1 - i] = cc % frontier_end;
              cc /= frontier_end;
            }
            for (auto p : pick) {
              fresh |= p >= old;
            }
            if (!fresh) {
              continue;
            }
            Table t(len);
            args.resize(m);
            for (std::size_t x = 0; x < len; ++x) {
              for (unsigned i = 0; i < m; ++i) {
                args[i] = known[pick[i]][x];
              }
              t[x] = (*op)(args, n);
            }
            if (seen.insert(key(t)).second) {
              if (targets) {
                wanted.erase(key(t));
                if (wanted.empty()) {
                  known.push_back(std::move(t));
                  return known;
                }
              }
              known.push_back(std::move(t));
            }
          }
        }
        old = frontier_end;
      }
      return known;
    }

    inline std::vector<Table> projections(std::size_t n, unsigned k) {
      std::vector<Table> out;
      for (unsigned i = 0; i < k; ++i) {
        Operation p = tabulate("", n, k, [&](auto x) { return x[i]; });
        out.push_back(std::move(p.table));
      }
      return out;
    }

    inline std::vector<Operation const*> generator_ops(FiniteAlgebra const& alg) {
      std::vector<Operation const*> out;
      for (auto g : alg.generators) {
        out.push_back(&alg.ops[g]);
      }
      return out;
    }
  }  // namespace detail

  inline bool is_constant(Table const& t) {
    return std::all_of(t.begin(), t.end(), [&](Element e) { return e == t[0]; });
  }

  inline UnaryClone unary_clone(FiniteAlgebra const& alg) {
    auto        all = detail::compose_closure(alg, detail::generator_ops(alg),
                                              detail::projections(alg.size, 1), 1);
    UnaryClone out;
    for (auto& t : all) {
      (is_constant(t) && alg.size > 1 ? out.constants : out.nonconstant)
          .push_back(std::move(t));
    }
    return out;
  }

  // k-ary part of the clone generated by ops (projections included).
  inline std::vector<Table> generate_clone(FiniteAlgebra const&             alg,
                                           std::vector<Operation> const&    ops,
                                           unsigned                         k,
                                           std::vector<Table> const*        targets = nullptr) {
    std::vector<Operation const*> p;
    for (auto const& op : ops) {
      p.push_back(&op);
    }
    return detail::compose_closure(alg, p, detail::projections(alg.size, k), k,
                                   targets);
  }

  // ---------------------------------------------------------------------
  // Closure and exchange

  inline Subset to_mask(std::vector<Element> const& xs) {
    Subset m = 0;
    for (auto x : xs) {
      m |= Subset{1} << x;
    }
    return m;
  }

  inline std::vector<Element> from_mask(Subset m) {
    std::vector<Element> out;
    for (Element x = 0; x < 64; ++x) {
      if (m >> x & 1) {
        out.push_back(x);
      }
    }
    return out;
  }

  // <emptyset>: images of nullary operations and of constant unary clone
  // maps.
  inline Subset constants_of(FiniteAlgebra const& alg) {
    Subset m = 0;
    for (auto const& op : alg.ops) {
      if (op.arity == 0) {
        m |= Subset{1} << op.table[0];
      }
    }
    for (auto const& t : unary_clone(alg).constants) {
      m |= Subset{1} << t[0];
    }
    return m;
  }

  namespace detail {
    inline Subset closure_from(FiniteAlgebra const& alg, Subset constants, Subset x) {
      Subset cur = x | constants;
      std::vector<Element> args;
      while (true) {
        Subset next    = cur;
        auto   members = from_mask(cur);
        for (auto g : alg.generators) {
          auto const& op = alg.ops[g];
          if (op.arity == 0) {
            next |= Subset{1} << op.table[0];
            continue;
          }
          args.assign(op.arity, 0);
          std::vector<std::size_t> pick(op.arity, 0);
          std::size_t total = ipow(members.size(), op.arity);
          for (std::size_t c = 0; c < total; ++c) {
            std::size_t cc = c;
            for (unsigned i = 0; i < op.arity; ++i) {
              args[i] = members[cc % members.size()];
              cc /= members.size();
            }
            next |= Subset{1} << op(args, alg.size);
          }
        }
        if (next == cur) {
          return cur;
        }
        cur = next;
      }
    }
  }  // namespace detail

  inline Subset closure(FiniteAlgebra const& alg, Subset x) {
    if (alg.size > max_carrier) {
      throw TooLarge("carrier exceeds 64 elements");
    }
    return detail::closure_from(alg, constants_of(alg), x);
  }

  inline std::vector<Element> closure(FiniteAlgebra const& alg,
                                      std::vector<Element> const& x) {
    return from_mask(closure(alg, to_mask(x)));
  }

  struct ExchangeResult {
    bool holds = true;
    // On failure: y in <X u {z}> \ <X> but z not in <X u {y}>.
    Subset  X = 0;
    Element y = 0, z = 0;
  };

  inline ExchangeResult check_exchange(FiniteAlgebra const& alg) {
    if (alg.size > max_exchange_carrier) {
      throw TooLarge("exchange check is exhaustive; carrier must have <= 16 elements");
    }
    std::size_t const   n    = alg.size;
    Subset const        cons = constants_of(alg);
    std::vector<Subset> cl(std::size_t{1} << n);
    for (Subset x = 0; x < cl.size(); ++x) {
      cl[x] = detail::closure_from(alg, cons, x);
    }
    for (Subset x = 0; x < cl.size(); ++x) {
      for (Element z = 0; z < n; ++z) {
        Subset with_z = cl[x | Subset{1} << z];
        for (Element y = 0; y < n; ++y) {
          bool new_y = (with_z >> y & 1) && !(cl[x] >> y & 1);
          if (new_y && !(cl[x | Subset{1} << y] >> z & 1)) {
            return {false, x, y, z};
          }
        }
      }
    }
    return {};
  }

  // ---------------------------------------------------------------------
  // Distributivity witnesses

  struct WitnessViolation {
    Table                unary;  // a in T
    std::string          op;     // t in W
    std::vector<Element> args;
    Element              lhs = 0;  // a(t(args))
    Element              rhs = 0;  // t(a(args))
  };

  struct WitnessReport {
    bool                     generates = true;
    std::vector<std::string> not_in_clone;    // members of W outside the clone
    std::vector<std::string> not_generated;   // basic ops W fails to generate
    std::size_t              violation_count = 0;
    std::vector<WitnessViolation> violations;  // first few, in search order
    std::size_t                   checked    = 0;

    bool passes() const {
      return generates && violation_count == 0;
    }
  };

  inline constexpr std::size_t max_reported_violations = 64;

  inline WitnessReport check_witness(FiniteAlgebra const&          alg,
                                     std::vector<Operation> const& W) {
    WitnessReport r;
    std::map<unsigned, std::vector<Table>> basic;
    for (auto const& op : alg.ops) {
      if (op.arity >= 1 && op.arity <= max_clone_arity) {
        basic[op.arity].push_back(op.table);
      }
    }
    std::vector<Operation> gens;
    for (auto g : alg.generators) {
      gens.push_back(alg.ops[g]);
    }
    for (auto const& w : W) {
      if (w.arity > max_clone_arity) {
        throw InvalidParams("witness operations are limited to arity 3");
      }
      if (w.arity == 0) {
        continue;
      }
      std::vector<Table> target{w.table};
      auto gen = generate_clone(alg, gens, w.arity, &target);
      if (std::find(gen.begin(), gen.end(), w.table) == gen.end()) {
        r.not_in_clone.push_back(w.name);
      }
    }
    // Nullary operations of the algebra must be reproduced by W.
    for (auto const& op : alg.ops) {
      if (op.arity == 0) {
        bool found = std::any_of(W.begin(), W.end(), [&](Operation const& w) {
          return w.arity == 0 && w.table == op.table;
        });
        if (!found) {
          r.not_generated.push_back(op.name);
        }
      }
    }
    for (auto const& [k, targets] : basic) {
      auto gen = generate_clone(alg, W, k, &targets);
      std::unordered_set<std::string> have;
      for (auto const& t : gen) {
        have.insert(detail::key(t));
      }
      for (auto const& op : alg.ops) {
        if (op.arity == k && !have.contains(detail::key(op.table))) {
          r.not_generated.push_back(op.name);
        }
      }
    }
    r.generates = r.not_in_clone.empty() && r.not_generated.empty();

    auto T = unary_clone(alg).nonconstant;
    std::vector<Element> ax;
    for (auto const& a : T) {
      for (auto const& t : W) {
        if (t.arity < 2) {
          continue;
        }
        detail::for_each_tuple(alg.size, t.arity, [&](std::span<Element const> x) {
          ++r.checked;
          ax.resize(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) {
            ax[i] = a[x[i]];
          }
          Element lhs = a[t(x, alg.size)];
          Element rhs = t(ax, alg.size);
          if (lhs != rhs) {
            ++r.violation_count;
            if (r.violations.size() < max_reported_violations) {
              r.violations.push_back(
                  {a, t.name, std::vector<Element>(x.begin(), x.end()), lhs, rhs});
            }
          }
        });
      }
    }
    return r;
  }

  // Witness set used for each kind:
  //   rank0: the basic operations;  linear: x1 - x2 + x3 and all f_{l,a};
  //   affine, q_homog_field: all basic operations;  exceptional: {i, q};
  //   group_action: the unary operations.
  inline std::vector<Operation> standard_witness(FiniteAlgebra const& alg) {
    std::vector<Operation> W;
    switch (alg.kind) {
      case Kind::linear: {
        std::string g = "f(1," + std::to_string(alg.q - 1) + ",1;"
                        + detail::vec_name({alg.q, alg.dim}, 0) + ")";
        for (auto const& op : alg.ops) {
          if (op.arity == 1 || op.name == g) {
            W.push_back(op);
          }
        }
        break;
      }
      case Kind::group_action:
        for (auto const& op : alg.ops) {
          if (op.arity <= 1) {
            W.push_back(op);
          }
        }
        break;
      default:
        W = alg.ops;
    }
    return W;
  }

  // {+, f_{l,a}} for a linear instance.
  inline std::vector<Operation> plus_witness(FiniteAlgebra const& alg) {
    if (alg.kind != Kind::linear) {
      throw InvalidParams("the + witness is defined for linear instances only");
    }
    std::string            plus = "f(1,1;" + detail::vec_name({alg.q, alg.dim}, 0) + ")";
    std::vector<Operation> W;
    for (auto const& op : alg.ops) {
      if (op.arity == 1) {
        W.push_back(op);
      } else if (op.name == plus) {
        W.push_back(op);
        W.back().name = "+";
      }
    }
    return W;
  }

  // ---------------------------------------------------------------------
  // Endomorphisms

  namespace detail {
    inline bool commutes(FiniteAlgebra const& alg, Table const& phi) {
      std::vector<Element> args;
      for (auto g : alg.generators) {
        auto const& op = alg.ops[g];
        bool        ok = true;
        for_each_tuple(alg.size, op.arity, [&](std::span<Element const> x) {
          if (!ok) {
            return;
          }
          args.resize(x.size());
          for (std::size_t i = 0; i < x.size(); ++i) {
            args[i] = phi[x[i]];
          }
          ok = phi[op(x, alg.size)] == op(args, alg.size);
        });
        if (!ok) {
          return false;
        }
      }
      return true;
    }
  }  // namespace detail

  // All self-maps commuting with every basic operation, in lexicographic
  // order of their tables.
  inline std::vector<Table> endomorphisms(FiniteAlgebra const& alg) {
    std::size_t const n = alg.size;
    std::vector<Table> out;
    if (n <= max_brute_endo) {
      // Each (op, tuple) constraint is tested as soon as the arguments and
      // the result are all assigned.
      struct Check {
        std::size_t          op;
        std::vector<Element> args;
        Element              res;
      };
      std::vector<std::vector<Check>> at(n);
      for (auto g : alg.generators) {
        auto const& op = alg.ops[g];
        detail::for_each_tuple(n, op.arity, [&](std::span<Element const> x) {
          Element res = op(x, n);
          Element top = res;
          for (auto v : x) {
            top = std::max(top, v);
          }
          at[top].push_back({g, {x.begin(), x.end()}, res});
        });
      }
      Table                phi(n, 0);
      std::vector<Element> args;
      std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (k == n) {
          out.push_back(phi);
          return;
        }
        for (std::size_t v = 0; v < n; ++v) {
          phi[k] = static_cast<Element>(v);
          bool ok = true;
          for (auto const& c : at[k]) {
            args.resize(c.args.size());
            for (std::size_t i = 0; i < c.args.size(); ++i) {
              args[i] = phi[c.args[i]];
            }
            if (phi[c.res] != alg.ops[c.op](args, n)) {
              ok = false;
              break;
            }
          }
          if (ok) {
            go(k + 1);
          }
        }
      };
      go(0);
      return out;
    }
    if (alg.kind == Kind::linear || alg.kind == Kind::affine) {
      // Every endomorphism commutes with x1 - x2 + x3, hence is x -> Mx + c.
      detail::VecSpace V{alg.q, alg.dim};
      unsigned const   d  = alg.dim;
      std::size_t      nm = detail::ipow(alg.q, d * d);
      for (std::size_t mcode = 0; mcode < nm; ++mcode) {
        for (std::size_t c = 0; c < n; ++c) {
          Table phi(n);
          for (std::size_t x = 0; x < n; ++x) {
            std::size_t r = c;
            for (unsigned i = 0; i < d; ++i) {
              unsigned s = 0;
              for (unsigned j = 0; j < d; ++j) {
                unsigned mij =
                    static_cast<unsigned>(mcode / detail::ipow(alg.q, i * d + j) % alg.q);
                s += mij * V.coord(x, j);
              }
              r = V.add(r, (s % alg.q) * detail::ipow(alg.q, i));
            }
            phi[x] = static_cast<Element>(r);
          }
          if (detail::commutes(alg, phi)) {
            out.push_back(std::move(phi));
          }
        }
      }
      std::sort(out.begin(), out.end());
      return out;
    }
    throw TooLarge("endomorphism enumeration needs a carrier of at most 8 elements");
  }

}  // namespace indalg

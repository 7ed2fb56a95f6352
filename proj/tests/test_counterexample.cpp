#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "indalg/counterexample.hpp"

using namespace indalg;

namespace {
  Term T(char const* s) {
    return Term::parse(s);
  }
  Word W(char const* s) {
    return Word::parse(s);
  }

  // Oracle for the unpinned part of h: the code as a bit string (leading
  // "1", then Elias gamma of gen and of the zig-zagged exponent per
  // syllable), read in binary, minus one; then the n-th even index skipping
  // 6, 8, 10.
  std::string gamma(unsigned long x) {
    std::string bin;
    for (; x; x >>= 1) {
      bin.insert(bin.begin(), char('0' + (x & 1)));
    }
    return std::string(bin.size() - 1, '0') + bin;
  }

  GenIndex oracle_h(Word const& w) {
    std::string bits = "1";
    for (auto const& s : w.syllables()) {
      bits += gamma(static_cast<unsigned long>(s.gen));
      bits += gamma(s.exp > 0 ? 2 * s.exp - 1 : -2 * s.exp);
    }
    GenIndex n = 0;
    for (char c : bits) {
      n = 2 * n + (c - '0');
    }
    n -= 1;
    std::vector<GenIndex> evens;
    for (GenIndex e = 2; evens.size() < 64; e += 2) {
      if (e != 6 && e != 8 && e != 10) {
        evens.push_back(e);
      }
    }
    if (n < 64) {
      return evens[static_cast<std::size_t>(n)];
    }
    return 2 * (n + 1) + 6;
  }

  // Prefix-constancy oracle: Form1 iff t(y) y_{t*}^-1 is the same on 100
  // seeded positive tuples.
  bool oracle_constant_prefix(Term const& t, HMap const& h, std::uint64_t seed) {
    Rng                   rng(seed);
    std::set<std::string> prefixes;
    for (int k = 0; k < 100; ++k) {
      std::vector<Word> y;
      for (std::size_t i = 0; i < t.meta().a; ++i) {
        y.push_back(random_positive_word(rng, 3, 9, 2));
      }
      prefixes.insert((eval(t, y, h) * y[t.meta().star - 1].inverse()).to_string());
    }
    return prefixes.size() == 1;
  }
}  // namespace

TEST_CASE("h pins and the first free value", "[counterexample]") {
  HMap h;
  CHECK(h_lookup(h, W("z1*z2^-1")) == 6);
  CHECK(h_lookup(h, W("z3*z2^-1")) == 8);
  CHECK(h_lookup(h, W("z1*z4^-1")) == 10);
  CHECK(h_lookup(h, Word{}) == 2);
}

TEST_CASE("h agrees with the bit-string oracle", "[counterexample][oracle]") {
  HMap h;
  Rng  rng(4);
  for (int k = 0; k < 2000; ++k) {
    Word w = random_word(rng, 4, 12, 5);
    if (h.pins().contains(w)) {
      continue;
    }
    REQUIRE(h_lookup(h, w) == oracle_h(w));
  }
}

TEST_CASE("h is injective into even indices and order independent", "[counterexample]") {
  HMap              h1, h2;
  Rng               rng(5);
  std::vector<Word> words{Word{}, W("z1*z2^-1"), W("z3*z2^-1"), W("z1*z4^-1")};
  for (int k = 0; k < 3000; ++k) {
    words.push_back(random_word(rng, 4, 7, 3));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::vector<GenIndex> forward, backward;
  for (auto const& w : words) {
    forward.push_back(h1(w));
  }
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    backward.push_back(h2(*it));
  }
  std::reverse(backward.begin(), backward.end());
  CHECK(forward == backward);
  std::set<GenIndex> distinct(forward.begin(), forward.end());
  CHECK(distinct.size() == words.size());
  for (auto const& v : forward) {
    REQUIRE(is_even(v));
  }
}

TEST_CASE("pin tables are validated", "[counterexample]") {
  CHECK_THROWS_AS(HMap({{z(1), GenIndex(3)}}), InvalidParams);
  CHECK_THROWS_AS(HMap({{z(1), GenIndex(4)}, {z(2), GenIndex(4)}}), InvalidParams);
  HMap custom({{z(1), GenIndex(4)}});
  CHECK(custom(z(1)) == 4);
  CHECK(custom(Word{}) == 2);
  std::set<GenIndex> seen{custom(z(1))};
  Rng                rng(6);
  for (int k = 0; k < 500; ++k) {
    Word w = random_word(rng, 3, 5, 2);
    if (w != z(1)) {
      CHECK(custom(w) != 4);
    }
  }
}

TEST_CASE("g examples", "[counterexample]") {
  HMap h;
  CHECK(g_apply(h, z(1), z(2)) == W("z6*z2"));
  CHECK(g_apply(h, z(3), z(2)) == W("z8*z2"));
  CHECK(g_apply(h, z(1), z(4)) == W("z10*z4"));
}

TEST_CASE("homogeneity", "[counterexample]") {
  HMap h;
  auto one = check_homogeneity(h, {{z(1), z(2), z(5)}});
  CHECK(one.failures.empty());
  CHECK(g_apply(h, z(1) * z(5), z(2) * z(5)) == W("z6*z2*z5"));
  CHECK(g_apply(h, z(1), z(2)) * z(5) == W("z6*z2*z5"));

  Word w = W("z3^2*z1^-1");
  CHECK(check_homogeneity(h, {{w, w, Word{}}}).failures.empty());

  auto big = check_homogeneity(h, 10000, 0);
  CHECK(big.samples == 10000);
  CHECK(big.failures.empty());
  CHECK_THROWS_AS(check_homogeneity(h, 0, 0), InvalidParams);
}

TEST_CASE("classify examples", "[counterexample]") {
  HMap h;
  auto f = classify(T("x1"), h);
  REQUIRE(f.is_form1());
  CHECK(f.prefix().is_identity());

  CHECK(classify(T("g(x1, x2)"), h).is_form2());

  Term t = T("g(nu(z3, x1), x1)");
  f      = classify(t, h);
  REQUIRE(f.is_form1());
  CHECK(f.prefix() == z(h_lookup(h, z(3))));
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    Word y = random_positive_word(rng, 4, 9, 3);
    REQUIRE(eval(t, {y}, h) == f.prefix() * y);
  }
}

TEST_CASE("sample_witnesses examples", "[counterexample]") {
  HMap h;
  Term t = T("g(x1, x2)");
  auto f = classify(t, h);
  auto s = sample_witnesses(f, t, h, 2);
  REQUIRE(s.size() == 2);
  for (auto const& w : s) {
    REQUIRE(w.mu.size() == 2);
    REQUIRE(w.mu[0].syllables().size() == 1);
    REQUIRE(w.mu[1].syllables().size() == 1);
    GenIndex expected = h_lookup(h, w.mu[0] * w.mu[1].inverse());
    CHECK(w.prefix == z(expected));
    CHECK(w.fresh_gen == expected);
  }
  CHECK(s[0].fresh_gen != s[1].fresh_gen);

  // The stream starts at (z1, z2), where h is pinned.
  CHECK(s[0].mu == std::vector<Word>{z(1), z(2)});
  CHECK(s[0].prefix == z(6));
  CHECK(s[0].fresh_gen == 6);

  CHECK_THROWS_AS(sample_witnesses(classify(T("x1"), h), T("x1"), h, 1), NotForm2);
  CHECK_THROWS_AS(sample_witnesses(f, T("g(x2, x1)"), h, 1), InvalidParams);
}

TEST_CASE("witness invariants on a seeded corpus", "[counterexample][property]") {
  HMap        h;
  auto        corpus = sample_terms(4, 3, {z(1), W("z3*z2^-1"), z(5, 2)}, 11, 400);
  std::size_t form2  = 0;
  for (auto const& t : corpus) {
    auto f = classify(t, h);
    if (f.is_form1()) {
      REQUIRE(in_fg_e_union(f.prefix(), t.meta().content));
      continue;
    }
    ++form2;
    INFO(t.to_string());
    auto samples = sample_witnesses(f, t, h, 25);
    std::set<GenIndex> fresh;
    std::set<Word>     prefixes;
    for (auto const& s : samples) {
      REQUIRE(s.mu.size() == t.meta().a);
      for (auto const& m : s.mu) {
        REQUIRE(is_positive(m));
      }
      REQUIRE(s.prefix == eval(t, s.mu, h) * s.mu[t.meta().star - 1].inverse());
      REQUIRE(s.prefix.has_positive_occurrence(s.fresh_gen));
      REQUIRE(in_fg_e_union(s.prefix, t.meta().content));
      fresh.insert(s.fresh_gen);
      prefixes.insert(s.prefix);
    }
    REQUIRE(fresh.size() == 25);
    REQUIRE(prefixes.size() == 25);
  }
  CHECK(form2 > 100);
}

TEST_CASE("classifier agrees with the prefix-constancy oracle", "[counterexample][oracle]") {
  HMap h;
  auto corpus = sample_terms(4, 3, {z(1), W("z2^-1*z3"), z(4)}, 21, 300);
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    INFO(corpus[k].to_string());
    REQUIRE(classify(corpus[k], h).is_form1() == oracle_constant_prefix(corpus[k], h, k));
  }
}

TEST_CASE("refutation examples", "[counterexample]") {
  HMap h;
  Term t = T("g(x1, x2)");
  auto c = refute_distributivity(t, h, z(3), {z(1), z(2)});
  CHECK(c.lhs == W("z3*z6*z2"));
  GenIndex k = h_lookup(h, W("z3*z1*z2^-1*z3^-1"));
  CHECK(c.rhs == z(k) * W("z3*z2"));
  CHECK(c.refutes());

  CHECK(refutation_element(t) == z(1));
  CHECK(refutation_element(T("nu(z1*z3, g(x1, x2))")) == z(5));
  auto d = refute_distributivity(t, h);
  CHECK(d.a == z(1));
  CHECK(d.refutes());

  CHECK_THROWS_AS(refute_distributivity(T("g(nu(z3, x1), x1)"), h), NotForm2);
  CHECK_THROWS_AS(refute_distributivity(T("x2"), h), NotForm2);
}

TEST_CASE("every Form2 term of a corpus is refuted", "[counterexample]") {
  HMap        h;
  auto        corpus  = sample_terms(4, 3, {z(1), W("z3*z2^-1"), z(5, 2)}, 0, 600);
  std::size_t refuted = 0;
  for (auto const& t : corpus) {
    if (!classify(t, h).is_form2()) {
      continue;
    }
    auto c = refute_distributivity(t, h);
    INFO(t.to_string());
    REQUIRE(c.a == refutation_element(t));
    REQUIRE_FALSE(t.meta().content.contains(c.a.syllables()[0].gen));
    REQUIRE(c.lhs == c.a * eval(t, c.mu, h));
    REQUIRE(c.refutes());
    ++refuted;
  }
  CHECK(refuted >= 200);
}

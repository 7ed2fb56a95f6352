// indalg: command-line front end for the verification workbench.
//
// Every subcommand writes one JSON report (or a flattened text rendering).
// Exit status: 0 when every check matches its expected outcome, 1 when some
// check does not, 2 on usage or input errors.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "indalg/indalg.hpp"

namespace {

  using json = nlohmann::ordered_json;
  using namespace indalg;

  struct RunConfig {
    std::uint64_t seed    = 0;
    std::size_t   samples = 1000;
    std::size_t   depth   = 4;
    std::size_t   n       = 2;
    std::string   format  = "json";
    std::string   out;
  };

  // A report plus its list of checks. Each check states the expected outcome
  // next to the observed one; "findings" such as a failing Ore condition are
  // checks whose expected value is the negative one.
  struct Report {
    json doc   = json::object();
    json items = json::array();

    void check(std::string const& name, json expected, json observed) {
      bool ok = expected == observed;
      items.push_back({{"name", name},
                       {"expected", std::move(expected)},
                       {"observed", std::move(observed)},
                       {"ok", ok}});
    }

    // Checks whose outcome is reported but not enforced.
    void note(std::string const& name, json observed) {
      items.push_back({{"name", name},
                       {"expected", "informational"},
                       {"observed", std::move(observed)},
                       {"ok", true}});
    }

    bool ok() const {
      for (auto const& c : items) {
        if (!c["ok"].get<bool>()) {
          return false;
        }
      }
      return true;
    }
  };

  class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  // ---------------------------------------------------------------------
  // JSON conversions

  json parse_json(std::string const& text, std::string const& what) {
    try {
      return json::parse(text);
    } catch (json::parse_error const& e) {
      throw UsageError("invalid JSON for " + what + ": " + e.what());
    }
  }

  Rat rat_from(json const& v) {
    if (v.is_number_integer()) {
      return Rat(v.get<std::int64_t>());
    }
    if (v.is_string()) {
      return parse_rational(v.get<std::string>());
    }
    throw UsageError("matrix entries are integers or \"p/q\" strings");
  }

  RatMatrix rat_matrix_from(json const& v) {
    if (!v.is_array() || v.empty() || !v[0].is_array()) {
      throw UsageError("a matrix is a nonempty array of rows");
    }
    RatMatrix m(v.size(), v[0].size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_array() || v[i].size() != m.cols()) {
        throw UsageError("matrix rows must have equal length");
      }
      for (std::size_t j = 0; j < m.cols(); ++j) {
        m(i, j) = rat_from(v[i][j]);
      }
    }
    return m;
  }

  IntMatrix int_matrix_from(json const& v) {
    RatMatrix m = rat_matrix_from(v);
    if (!is_integral(m)) {
      throw UsageError("starred relations need integer matrices");
    }
    return to_int(m);
  }

  json to_json(RatMatrix const& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) {
        row.push_back(to_string(m(i, j)));
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  json to_json(IntMatrix const& m) {
    return to_json(to_rat(m));
  }

  std::vector<Int> int_vector_from(json const& v) {
    if (!v.is_array()) {
      throw UsageError("expected an integer array");
    }
    std::vector<Int> out;
    for (auto const& x : v) {
      if (!x.is_number_integer()) {
        throw UsageError("expected an integer array");
      }
      out.emplace_back(x.get<std::int64_t>());
    }
    return out;
  }

  json to_json(std::vector<Int> const& v) {
    json a = json::array();
    for (auto const& x : v) {
      a.push_back(x.str());
    }
    return a;
  }

  ActElem act_elem_from(json const& v) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer()
        || !v[1].is_number_integer() || v[1].get<std::int64_t>() < 1) {
      throw UsageError("an act element is [shift, generator]");
    }
    return {v[0].get<std::int64_t>(), v[1].get<std::size_t>()};
  }

  // [[shift, target], ...]; the flavor is B when every shift is >= 0.
  ActEndo act_endo_from(json const& v) {
    if (!v.is_array()) {
      throw UsageError("an act endomorphism is a list of [shift, target] images");
    }
    std::vector<ActElem> im;
    bool                 b = true;
    for (auto const& e : v) {
      im.push_back(act_elem_from(e));
      b = b && im.back().shift >= 0;
    }
    if (im.size() > max_act_rank) {
      throw UsageError("act rank must be at most 3");
    }
    return {std::move(im), b ? Flavor::B : Flavor::A};
  }

  json to_json(ActElem const& e) {
    return json::array({e.shift, e.gen});
  }

  json to_json(ActEndo const& x) {
    json a = json::array();
    for (auto const& e : x.images()) {
      a.push_back(to_json(e));
    }
    return a;
  }

  json to_json(std::vector<Word> const& ws) {
    json a = json::array();
    for (auto const& w : ws) {
      a.push_back(w.to_string());
    }
    return a;
  }

  json to_json(Table const& t) {
    json a = json::array();
    for (auto x : t) {
      a.push_back(int(x));
    }
    return a;
  }

  // Input document: --input FILE, or the inline option values.
  json load_input(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw UsageError("cannot read " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
  }

  json operand(json const& input, std::string const& inline_text,
               std::string const& key) {
    if (!inline_text.empty()) {
      return parse_json(inline_text, key);
    }
    if (input.contains(key)) {
      return input[key];
    }
    throw UsageError("missing operand '" + key + "'");
  }

  // ---------------------------------------------------------------------
  // Subcommands

  std::vector<Word> default_pool() {
    return {z(1), Word::parse("z3*z2^-1"), Word::parse("z5^2")};
  }

  // {"<word>": <even index>, ...}; empty text keeps the standard pins.
  HMap hmap_from(std::string const& pins) {
    if (pins.empty()) {
      return HMap();
    }
    json                     v = parse_json(pins, "--pins");
    std::map<Word, GenIndex> table;
    if (!v.is_object()) {
      throw UsageError("--pins must be a JSON object");
    }
    for (auto const& [w, x] : v.items()) {
      if (!x.is_number_integer()) {
        throw UsageError("pinned values are integers");
      }
      table.emplace(Word::parse(w), GenIndex(x.get<std::int64_t>()));
    }
    return HMap(std::move(table));
  }

  Report run_verify_counterexample(RunConfig const& cfg, std::size_t corpus,
                                   std::string const& pins) {
    Report r;
    HMap   h = hmap_from(pins);
    json   pinned = json::array();
    struct Pin {
      int w1, w2;
      char const* expected;
    };
    for (auto [a, b, want] : {Pin{1, 2, "z6*z2"}, Pin{3, 2, "z8*z2"}, Pin{1, 4, "z10*z4"}}) {
      std::string got = g_apply(h, z(a), z(b)).to_string();
      pinned.push_back({{"w1", z(a).to_string()},
                        {"w2", z(b).to_string()},
                        {"value", got}});
      r.check("g(" + z(a).to_string() + "," + z(b).to_string() + ")", want, got);
    }
    r.doc["pinned"] = pinned;

    auto hom = check_homogeneity(h, cfg.samples, cfg.seed);
    json failures = json::array();
    for (auto const& f : hom.failures) {
      failures.push_back({{"w1", f.w1.to_string()},
                          {"w2", f.w2.to_string()},
                          {"shift", f.shift.to_string()},
                          {"lhs", f.lhs.to_string()},
                          {"rhs", f.rhs.to_string()}});
    }
    r.doc["homogeneity"] = {{"samples", hom.samples}, {"failures", failures}};
    r.check("homogeneity-failures", 0, hom.failures.size());

    // Corpus: sampled terms until enough Form2 terms have been seen.
    std::vector<Term> terms;
    std::size_t       form2 = 0;
    for (std::size_t want = 4 * corpus; form2 < corpus; want *= 2) {
      terms = sample_terms(cfg.depth, 3, default_pool(), cfg.seed, want);
      form2 = 0;
      for (auto const& t : terms) {
        form2 += classify(t, h).is_form2() ? 1 : 0;
      }
      if (want > 64 * corpus) {
        break;
      }
    }
    json        classified = json::array();
    json        refutations = json::array();
    std::size_t refuted = 0, seen2 = 0;
    for (auto const& t : terms) {
      if (seen2 == corpus) {
        break;
      }
      TermForm form  = classify(t, h);
      json     entry = {{"term", t.to_string()}, {"form", form.is_form1() ? "Form1" : "Form2"},
                        {"case", form.case_name()}};
      if (form.is_form1()) {
        entry["prefix"] = form.prefix().to_string();
      } else {
        ++seen2;
        Counterexample c = refute_distributivity(t, h);
        refuted += c.refutes() ? 1 : 0;
        refutations.push_back({{"term", t.to_string()},
                               {"a", c.a.to_string()},
                               {"mu", to_json(c.mu)},
                               {"lhs", c.lhs.to_string()},
                               {"rhs", c.rhs.to_string()},
                               {"refutes", c.refutes()}});
      }
      classified.push_back(std::move(entry));
    }
    r.doc["corpus"] = {{"depth", cfg.depth}, {"terms", classified.size()},
                       {"form2", seen2}, {"classification", classified}};
    r.doc["refutations"] = refutations;
    r.check("form2-corpus-size", corpus, seen2);
    r.check("unrefuted-form2-terms", 0, seen2 - refuted);
    return r;
  }

  Report run_classify(std::string const& text, std::size_t count) {
    Report   r;
    HMap     h;
    Term     t    = Term::parse(text);
    TermForm form = classify(t, h);
    auto const& m = t.meta();
    json content  = json::array();
    for (auto const& g : m.content) {
      content.push_back(g.str());
    }
    r.doc["term"] = t.to_string();
    r.doc["meta"] = {{"a", m.a}, {"star", m.star}, {"content", content}};
    r.doc["form"] = form.is_form1() ? "Form1" : "Form2";
    r.doc["case"] = form.case_name();
    if (form.is_form1()) {
      r.doc["prefix"] = form.prefix().to_string();
      return r;
    }
    json samples = json::array();
    for (auto const& s : sample_witnesses(form, t, h, count)) {
      samples.push_back({{"mu", to_json(s.mu)},
                         {"prefix", s.prefix.to_string()},
                         {"fresh_gen", s.fresh_gen.str()}});
    }
    r.doc["witnesses"] = samples;
    Counterexample c = refute_distributivity(t, h);
    r.doc["refutation"] = {{"a", c.a.to_string()}, {"mu", to_json(c.mu)},
                           {"lhs", c.lhs.to_string()}, {"rhs", c.rhs.to_string()}};
    r.check("refutes-distributivity", true, c.refutes());
    return r;
  }

  InstanceParams params_from(json const& p) {
    InstanceParams ip;
    if (!p.is_object()) {
      throw UsageError("--params must be a JSON object");
    }
    ip.q    = p.value("q", ip.q);
    ip.dim  = p.value("dim", ip.dim);
    ip.size = p.value("size", ip.size);
    if (p.contains("a0")) {
      ip.a0 = p["a0"].get<std::vector<std::size_t>>();
    }
    if (p.contains("perms")) {
      for (auto const& perm : p["perms"]) {
        std::vector<Element> pv;
        for (auto x : perm.get<std::vector<int>>()) {
          pv.push_back(static_cast<Element>(x));
        }
        ip.perms.push_back(std::move(pv));
      }
    }
    return ip;
  }

  Report run_catalog(std::string const& kind_name, std::string const& params,
                     std::string const& check, std::string const& witness,
                     bool tables) {
    Report        r;
    Kind          kind = kind_from_string(kind_name);
    FiniteAlgebra alg  = make_instance(kind, params_from(parse_json(params, "--params")));
    json          ops  = json::array();
    for (auto const& op : alg.ops) {
      json o = {{"name", op.name}, {"arity", op.arity}};
      if (tables) {
        o["table"] = to_json(op.table);
      }
      ops.push_back(std::move(o));
    }
    r.doc["algebra"] = {{"kind", to_string(alg.kind)}, {"size", alg.size}, {"ops", ops}};
    if (check == "exchange") {
      auto res = check_exchange(alg);
      json e   = {{"holds", res.holds}};
      if (!res.holds) {
        e["witness"] = {{"X", to_json(from_mask(res.X))}, {"y", int(res.y)}, {"z", int(res.z)}};
      }
      r.doc["exchange"] = e;
      r.check("exchange", kind != Kind::semilattice, res.holds);
    } else if (check == "witness") {
      std::vector<Operation> W;
      if (witness == "standard") {
        W = standard_witness(alg);
      } else if (witness == "plus") {
        W = plus_witness(alg);
      } else {
        throw UsageError("--witness is standard or plus");
      }
      auto res   = check_witness(alg, W);
      json names = json::array();
      for (auto const& op : W) {
        names.push_back(op.name);
      }
      json viol = json::array();
      for (auto const& v : res.violations) {
        viol.push_back({{"unary", to_json(v.unary)}, {"op", v.op}, {"args", to_json(v.args)},
                        {"lhs", int(v.lhs)}, {"rhs", int(v.rhs)}});
      }
      r.doc["witness"] = {{"ops", names},
                          {"generates", res.generates},
                          {"not_in_clone", res.not_in_clone},
                          {"not_generated", res.not_generated},
                          {"checked", res.checked},
                          {"violation_count", res.violation_count},
                          {"violations", viol}};
      r.check("witness", witness == "standard" ? "pass" : "fail",
              res.passes() ? "pass" : "fail");
    } else if (check == "clone") {
      auto uc = unary_clone(alg);
      json nc = json::array(), cs = json::array();
      for (auto const& t : uc.nonconstant) {
        nc.push_back(to_json(t));
      }
      for (auto const& t : uc.constants) {
        cs.push_back(to_json(t));
      }
      r.doc["unary_clone"] = {{"nonconstant", nc}, {"constants", cs}};
      r.note("nonconstant-count", uc.nonconstant.size());
    } else if (check == "endos") {
      auto endos = endomorphisms(alg);
      json list  = json::array();
      for (auto const& e : endos) {
        list.push_back(to_json(e));
      }
      r.doc["endomorphisms"] = {{"count", endos.size()}, {"maps", list}};
      r.note("endomorphism-count", endos.size());
    } else {
      throw UsageError("--check is one of exchange, witness, clone, endos");
    }
    return r;
  }

  Report run_decompose(std::string const& mode, std::string const& backend,
                       json const& alpha_json) {
    Report r;
    if (backend == "matrix") {
      RatMatrix alpha = rat_matrix_from(alpha_json);
      r.doc["alpha"]  = to_json(alpha);
      if (mode == "left" || mode == "straight") {
        auto d = mode == "left" ? left_decompose(alpha) : straight_left_decompose(alpha);
        r.doc["a"]          = to_json(d.a);
        r.doc["b"]          = to_json(d.b);
        RatMatrix back      = recompose(d);
        r.doc["recomposed"] = to_json(back);
        r.check("recomposes", true, back == alpha);
        if (mode == "straight") {
          RatMatrix a = to_rat(d.a), b = to_rat(d.b);
          r.check("rank(a)=rank(a^2)", true, rank(a) == rank(a * a));
          r.check("col(a)=col(b)", true,
                  column_space_contained(a, b) && column_space_contained(b, a));
        }
      } else if (mode == "right") {
        auto d              = right_decompose(alpha);
        r.doc["gamma"]      = to_json(d.gamma);
        r.doc["beta"]       = to_json(d.beta);
        RatMatrix back      = recompose(d);
        r.doc["recomposed"] = to_json(back);
        r.check("recomposes", true, back == alpha);
      } else {
        throw UsageError("--mode is left, right or straight");
      }
    } else if (backend == "act") {
      ActEndo alpha  = lift(act_endo_from(alpha_json));
      r.doc["alpha"] = to_json(alpha);
      if (mode == "left" || mode == "straight") {
        auto d = mode == "left" ? act_left_decompose(alpha) : act_straight_left_decompose(alpha);
        r.doc["a"]          = to_json(d.a);
        r.doc["b"]          = to_json(d.b);
        ActEndo back        = recompose(d);
        r.doc["recomposed"] = to_json(back);
        r.check("recomposes", true, back == alpha);
        if (mode == "straight") {
          r.check("a R b", true, greens_eq(Side::R, lift(d.a), lift(d.b)));
        }
      } else if (mode == "right") {
        auto d              = act_right_decompose(alpha);
        r.doc["gamma"]      = to_json(d.gamma);
        r.doc["beta"]       = to_json(d.beta);
        ActEndo back        = recompose(d);
        r.doc["recomposed"] = to_json(back);
        r.check("recomposes", true, back == alpha);
      } else {
        throw UsageError("--mode is left, right or straight");
      }
    } else {
      throw UsageError("--backend is matrix or act");
    }
    return r;
  }

  Report run_greens(std::string const& side_name, std::string const& backend,
                    json const& a, json const& b) {
    Report r;
    Side   side = side_from_string(side_name);
    bool   leq = false, geq = false;
    if (backend == "matrix") {
      if (is_starred(side)) {
        IntMatrix x = int_matrix_from(a), y = int_matrix_from(b);
        leq = greens_leq(side, x, y);
        geq = greens_leq(side, y, x);
      } else {
        RatMatrix x = rat_matrix_from(a), y = rat_matrix_from(b);
        leq = greens_leq(side, x, y);
        geq = greens_leq(side, y, x);
      }
    } else if (backend == "act") {
      ActEndo x = act_endo_from(a), y = act_endo_from(b);
      if (!is_starred(side)) {
        x = lift(x);
        y = lift(y);
      }
      leq = greens_leq(side, x, y);
      geq = greens_leq(side, y, x);
    } else {
      throw UsageError("--backend is matrix or act");
    }
    r.doc["side"]     = to_string(side);
    r.doc["leq"]      = leq;
    r.doc["geq"]      = geq;
    r.doc["related"]  = leq && geq;
    return r;
  }

  Report run_quotient(std::string const& action, std::string const& backend,
                      json const& input, std::string const& p_text,
                      std::string const& q_text, std::string const& b_text) {
    Report r;
    auto   pair_parts = [](json const& v) {
      if (!v.is_array() || v.size() != 2) {
        throw UsageError("a pair is [t, b]");
      }
      return std::pair{v[0], v[1]};
    };
    if (action == "eq") {
      auto [pt, pb] = pair_parts(operand(input, p_text, "p"));
      auto [qt, qb] = pair_parts(operand(input, q_text, "q"));
      if (backend == "matrix") {
        MatPair p{Int(pt.get<std::int64_t>()), int_vector_from(pb)};
        MatPair q{Int(qt.get<std::int64_t>()), int_vector_from(qb)};
        auto    w = quotient_eq(p, q);
        auto    cp = canonical(p), cq = canonical(q);
        r.doc["equal"] = w.equal;
        if (w.equal) {
          r.doc["witness"] = {{"x", w.x.str()}, {"y", w.y.str()}};
        }
        r.doc["canonical"] = {{{"d", cp.d.str()}, {"v", to_json(cp.v)}},
                              {{"d", cq.d.str()}, {"v", to_json(cq.v)}}};
      } else if (backend == "act") {
        ActPair p{pt.get<std::int64_t>(), act_elem_from(pb)};
        ActPair q{qt.get<std::int64_t>(), act_elem_from(qb)};
        r.doc["equal"]     = quotient_eq(p, q);
        r.doc["canonical"] = {to_json(canonical(p)), to_json(canonical(q))};
      } else {
        throw UsageError("--backend is matrix or act");
      }
    } else if (action == "embed") {
      json b = operand(input, b_text, "b");
      if (backend == "matrix") {
        auto e = embed(int_vector_from(b));
        r.doc["embedded"] = {{"d", e.d.str()}, {"v", to_json(e.v)}};
      } else if (backend == "act") {
        r.doc["embedded"] = to_json(embed(act_elem_from(b)));
      } else {
        throw UsageError("--backend is matrix or act");
      }
    } else {
      throw UsageError("quotient action is eq or embed");
    }
    return r;
  }

  Report run_ci(std::string const& backend) {
    Report r;
    auto   c   = ConstantAction::by_name(backend);
    auto   res = check_ci(c);
    r.doc["backend"] = c.name;
    r.doc["holds"]   = res.holds;
    if (!res.holds) {
      r.doc["witness"] = {{"translation", res.translation}, {"unreached", res.unreached}};
    }
    r.check("CI", backend != "mock", res.holds);
    return r;
  }

  Report run_ore(std::string const& monoid, std::string const& side, std::size_t depth) {
    Report r;
    auto   m = PresentedMonoid::by_name(monoid);
    std::vector<OreSide> sides;
    if (side == "left" || side == "both") {
      sides.push_back(OreSide::left);
    }
    if (side == "right" || side == "both") {
      sides.push_back(OreSide::right);
    }
    if (sides.empty()) {
      throw UsageError("--side is left, right or both");
    }
    r.doc["monoid"] = m.name();
    r.doc["depth"]  = depth;
    for (auto s : sides) {
      auto        res  = ore_check(m, s, depth);
      std::string name = s == OreSide::left ? "left" : "right";
      json        e    = {{"status", to_string(res.status)}, {"pairs", res.pairs}};
      if (res.status != OreStatus::holds) {
        e["a"]           = res.a;
        e["b"]           = res.b;
        e["certificate"] = res.certificate;
      }
      r.doc[name] = e;
      r.check("ore-" + name, m.is_free() ? "fails" : "holds", to_string(res.status));
    }
    return r;
  }

  Report run_suite(std::string const& backend, RunConfig const& cfg) {
    Report r;
    auto   rep = stratification_suite(backend, cfg.n, cfg.seed, cfg.samples);
    r.doc["backend"] = rep.backend;
    r.doc["n"]       = rep.n;
    r.doc["seed"]    = rep.seed;
    r.doc["samples"] = rep.samples;
    for (auto const& c : rep.checks) {
      json observed = {{"cases", c.cases},
                       {"failures", c.failures},
                       {"counterexamples", c.counterexamples}};
      if (c.informational) {
        r.note(c.name, observed);
      } else {
        r.items.push_back({{"name", c.name},
                           {"expected", "pass"},
                           {"observed", observed},
                           {"ok", c.passed()}});
      }
    }
    return r;
  }

  // ---------------------------------------------------------------------
  // Output

  void flatten(json const& v, std::string const& path, std::ostream& os) {
    if (v.is_object()) {
      for (auto const& [k, x] : v.items()) {
        flatten(x, path.empty() ? k : path + "." + k, os);
      }
    } else if (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array())) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        flatten(v[i], path + "[" + std::to_string(i) + "]", os);
      }
    } else {
      os << path << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }

  void emit(std::string const& command, Report& r, RunConfig const& cfg) {
    json doc = {{"schema", 1}, {"command", command}};
    for (auto const& [k, v] : r.doc.items()) {
      doc[k] = v;
    }
    doc["checks"] = r.items;
    doc["ok"]     = r.ok();
    std::ostringstream os;
    if (cfg.format == "text") {
      flatten(doc, "", os);
    } else {
      os << doc.dump(2) << "\n";
    }
    if (cfg.out.empty()) {
      std::cout << os.str();
    } else {
      std::ofstream f(cfg.out);
      if (!f) {
        throw UsageError("cannot write " + cfg.out);
      }
      f << os.str();
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification workbench for independence algebras and orders"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "sample count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--depth", cfg.depth, "term or search depth")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--n", cfg.n, "rank")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.add_option("--out", cfg.out, "write the report to a file");

  std::string input_path;
  auto        add_input = [&](CLI::App* sub) {
    sub->add_option("--input", input_path, "JSON file with the operands");
  };

  auto*       vc     = app.add_subcommand("verify-counterexample", "pinned values, homogeneity, refutations");
  std::size_t corpus = 200;
  vc->add_option("--corpus", corpus, "number of Form2 terms to refute")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  std::string pins;
  vc->add_option("--pins", pins, "h pin table as JSON, word -> even index");

  auto*       cl = app.add_subcommand("classify", "classify a term");
  std::string term_text;
  std::size_t count = 5;
  cl->add_option("--term", term_text, "term, e.g. g(x1, nu(z3, x2))")->required();
  cl->add_option("--count", count, "witness samples for Form2 terms")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto*       cat = app.add_subcommand("catalog", "finite algebra instances");
  std::string kind_name, params = "{}", check = "exchange", witness = "standard";
  bool        tables = false;
  cat->add_option("--kind", kind_name, "instance kind")->required();
  cat->add_option("--params", params, "JSON parameters")->capture_default_str();
  cat->add_option("--check", check, "exchange, witness, clone or endos")
      ->check(CLI::IsMember({"exchange", "witness", "clone", "endos"}))
      ->capture_default_str();
  cat->add_option("--witness", witness, "standard or plus")
      ->check(CLI::IsMember({"standard", "plus"}))
      ->capture_default_str();
  cat->add_flag("--tables", tables, "include operation tables");

  auto*       dec = app.add_subcommand("decompose", "left, right or straight decompositions");
  std::string mode = "left", backend = "matrix", alpha_text, beta_text;
  dec->add_option("--mode", mode)->check(CLI::IsMember({"left", "right", "straight"}))->capture_default_str();
  dec->add_option("--backend", backend)->check(CLI::IsMember({"matrix", "act"}))->capture_default_str();
  dec->add_option("--alpha", alpha_text, "alpha as JSON");
  add_input(dec);

  auto*       gr = app.add_subcommand("greens", "Green's and starred preorders");
  std::string side = "R";
  gr->add_option("--side", side)->check(CLI::IsMember({"R", "L", "Rstar", "Lstar"}))->capture_default_str();
  gr->add_option("--backend", backend)->check(CLI::IsMember({"matrix", "act"}))->capture_default_str();
  gr->add_option("--alpha", alpha_text, "alpha as JSON");
  gr->add_option("--beta", beta_text, "beta as JSON");
  add_input(gr);

  auto*       qu = app.add_subcommand("quotient", "quotient elements");
  std::string action, p_text, q_text, b_text;
  qu->add_option("action", action, "eq or embed")->required()->check(CLI::IsMember({"eq", "embed"}));
  qu->add_option("--backend", backend)->check(CLI::IsMember({"matrix", "act"}))->capture_default_str();
  qu->add_option("--p", p_text, "pair [t, b] as JSON");
  qu->add_option("--q", q_text, "pair [t, b] as JSON");
  qu->add_option("--b", b_text, "element of B as JSON");
  add_input(qu);

  auto*       ci         = app.add_subcommand("ci-check", "constant isomorphism property");
  std::string ci_backend = "matrix";
  ci->add_option("--backend", ci_backend)
      ->check(CLI::IsMember({"matrix", "act", "mock"}))
      ->capture_default_str();

  auto*       ore    = app.add_subcommand("ore-check", "bounded Ore condition search");
  std::string monoid = "posint", ore_side = "both";
  ore->add_option("--monoid", monoid)->check(CLI::IsMember({"posint", "free2"}))->capture_default_str();
  ore->add_option("--side", ore_side)->check(CLI::IsMember({"left", "right", "both"}))->capture_default_str();

  auto*       su            = app.add_subcommand("suite", "stratification suite");
  std::string suite_backend = "act";
  su->add_option("--backend", suite_backend)
      ->check(CLI::IsMember({"act", "matrix"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }

  try {
    json   input = input_path.empty() ? json::object() : load_input(input_path);
    Report r;
    std::string command = app.get_subcommands().front()->get_name();
    if (command == "verify-counterexample") {
      r = run_verify_counterexample(cfg, corpus, pins);
    } else if (command == "classify") {
      r = run_classify(term_text, count);
    } else if (command == "catalog") {
      r = run_catalog(kind_name, params, check, witness, tables);
    } else if (command == "decompose") {
      r = run_decompose(mode, backend, operand(input, alpha_text, "alpha"));
    } else if (command == "greens") {
      r = run_greens(side, backend, operand(input, alpha_text, "alpha"),
                     operand(input, beta_text, "beta"));
    } else if (command == "quotient") {
      r = run_quotient(action, backend, input, p_text, q_text, b_text);
    } else if (command == "ci-check") {
      r = run_ci(ci_backend);
    } else if (command == "ore-check") {
      r = run_ore(monoid, ore_side, cfg.depth);
    } else {
      r = run_suite(suite_backend, cfg);
    }
    emit(command, r, cfg);
    return r.ok() ? 0 : 1;
  } catch (UsageError const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (indalg::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (json::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}

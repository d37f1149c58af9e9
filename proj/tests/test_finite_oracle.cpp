#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <string>
#include <vector>

#include "atomspec/dsl.hpp"
#include "atomspec/errors.hpp"
#include "atomspec/finite_oracle.hpp"
#include "json.hpp"

using namespace atomspec;
using atomspec::fp::Mat;

namespace {

FiniteOracle oracle_for(const std::string& dsl, OracleGuards guards = {}) {
  LoadedInput in = load_input(dsl);
  return FiniteOracle(in.algebra, in.relations, guards);
}

const char* kJordanFree = "vertices v; arrows x: v -> v; ring F2;";
const char* kJordanSq =
    "vertices v; arrows x: v -> v; relations x^2; ring F2;";
const char* kSigma2 = "vertices 1 2; arrows a: 1 -> 2; ring F2;";
const char* kA3 =
    "vertices 1 2 3; arrows d1: 2 -> 1, d2: 3 -> 2; relations d1*d2; "
    "ring F2;";

Mat mat1(int v) {
  Mat m = Mat::zero(1, 1);
  m.at(0, 0) = v;
  return m;
}

// the regular module of F_2[x]/(x^2): basis {1, x}, x acting nilpotently
FiniteRep jordan_regular(const FiniteOracle& o) {
  Mat x = Mat::zero(2, 2);
  x.at(1, 0) = 1;
  return o.make_rep({2}, {x});
}

}  // namespace

TEST_CASE("construction enforces the supported envelope") {
  CHECK_THROWS_AS(oracle_for("vertices v; ring Z;"), CapabilityError);
  CHECK_THROWS_AS(oracle_for("vertices v; ring Z/6;"), CapabilityError);
  // the prime cap is a guard, not a capability: raising it admits F_11
  CHECK_THROWS_AS(oracle_for("vertices v; ring F11;"), ResourceError);
  OracleGuards wide;
  wide.max_prime = 11;
  LoadedInput in = load_input("vertices v; ring F11;");
  FiniteOracle eleven(in.algebra, in.relations, wide);
  CHECK(eleven.p() == 11);
  FiniteOracle o = oracle_for(kJordanSq);
  CHECK(o.p() == 2);
}

TEST_CASE("representations validate their shapes") {
  FiniteOracle o = oracle_for(kSigma2);
  CHECK_THROWS_AS(o.make_rep({1}, {Mat::zero(1, 1)}), UsageError);
  CHECK_THROWS_AS(o.make_rep({1, 1}, {Mat::zero(2, 1)}), UsageError);
  FiniteRep ok = o.make_rep({1, 1}, {mat1(1)});
  CHECK(ok.total() == 2);
  CHECK(o.zero_rep().is_zero());
}

TEST_CASE("relation matrices and satisfaction") {
  FiniteOracle o = oracle_for(kJordanSq);
  CHECK(o.check_relations(o.make_rep({1}, {mat1(0)})));
  CHECK(!o.check_relations(o.make_rep({1}, {mat1(1)})));

  FiniteOracle free_o = oracle_for(kJordanFree);
  CHECK(free_o.check_relations(free_o.make_rep({1}, {mat1(1)})));

  FiniteOracle a3 = oracle_for(kA3);
  FiniteRep bad = a3.make_rep({1, 1, 1}, {mat1(1), mat1(1)});
  CHECK(!a3.check_relations(bad));
  FiniteRep good = a3.make_rep({1, 1, 1}, {mat1(1), mat1(0)});
  CHECK(a3.check_relations(good));
}

TEST_CASE("path and relation matrices multiply in application order") {
  FiniteOracle a3 = oracle_for(kA3);
  FiniteRep x = a3.make_rep({1, 2, 1}, {Mat::zero(1, 2), Mat::zero(2, 1)});
  // d1: 2 -> 1 is 1x2, d2: 3 -> 2 is 2x1
  Mat d1 = Mat::zero(1, 2);
  d1.at(0, 0) = 1;
  Mat d2 = Mat::zero(2, 1);
  d2.at(1, 0) = 1;
  x = a3.make_rep({1, 2, 1}, {d1, d2});
  Path p = a3.algebra().quiver().path_from_ids({"d2", "d1"});
  Mat m = a3.path_matrix(x, p);
  CHECK(m.rows == 1);
  CHECK(m.cols == 1);
  CHECK(m.at(0, 0) == 0);  // d1 then d2 composes to zero here
  CHECK(a3.check_relations(x));
}

TEST_CASE("submodule enumeration on the worked examples") {
  FiniteOracle s2 = oracle_for(kSigma2);
  auto stalk_subs = s2.submodules(s2.stalk(0));
  CHECK(stalk_subs.size() == 2);
  CHECK(stalk_subs.front().total() == 0);
  CHECK(stalk_subs.back().total() == 1);

  FiniteOracle j = oracle_for(kJordanSq);
  FiniteRep reg = jordan_regular(j);
  auto subs = j.submodules(reg);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].total() == 0);
  CHECK(subs[1].total() == 1);
  CHECK(subs[2].total() == 2);
  // the middle one is the image/kernel of x
  CHECK(subs[1].spaces[0].contains(std::vector<int>{0, 1}));

  // direct sum of the two nonisomorphic simples: 4 submodules
  FiniteRep both = s2.direct_sum(s2.stalk(0), s2.stalk(1));
  CHECK(s2.submodules(both).size() == 4);
}

TEST_CASE("submodule guard trips loudly") {
  FiniteOracle j = oracle_for(kJordanSq, OracleGuards{7, 4, 100000, 10000000});
  CHECK_THROWS_AS(j.submodules(jordan_regular(j)), ResourceError);
}

TEST_CASE("sub and quotient representations") {
  FiniteOracle j = oracle_for(kJordanSq);
  FiniteRep reg = jordan_regular(j);
  auto subs = j.submodules(reg);
  REQUIRE(subs.size() == 3);

  CHECK(j.isomorphic(j.quotient(reg, subs[0]), reg));
  CHECK(j.quotient(reg, subs[2]).is_zero());

  FiniteRep mid = j.sub_rep(reg, subs[1]);
  CHECK(mid.dims == std::vector<int>{1});
  CHECK(mid.mats[0].at(0, 0) == 0);
  FiniteRep q = j.quotient(reg, subs[1]);
  CHECK(q.dims == std::vector<int>{1});
  CHECK(q.mats[0].at(0, 0) == 0);
  CHECK(j.check_relations(q));
}

TEST_CASE("isomorphism testing finds a change of basis or rules it out") {
  FiniteOracle jf = oracle_for(kJordanFree);
  Mat upper = Mat::zero(2, 2);
  upper.at(0, 1) = 1;
  Mat lower = Mat::zero(2, 2);
  lower.at(1, 0) = 1;
  CHECK(jf.isomorphic(jf.make_rep({2}, {upper}), jf.make_rep({2}, {lower})));
  CHECK(!jf.isomorphic(jf.make_rep({2}, {upper}),
                       jf.make_rep({2}, {Mat::zero(2, 2)})));
  CHECK(!jf.isomorphic(jf.make_rep({1}, {mat1(0)}),
                       jf.make_rep({1}, {mat1(1)})));
  CHECK(jf.isomorphic(jf.zero_rep(), jf.zero_rep()));
  CHECK(!jf.isomorphic(jf.zero_rep(), jf.stalk(0)));
}

TEST_CASE("common nonzero subobjects") {
  FiniteOracle s2 = oracle_for(kSigma2);
  FiniteRep s_1 = s2.stalk(0);
  FiniteRep s_2 = s2.stalk(1);
  CHECK(s2.common_nonzero_subobject(s_1, s_1));
  CHECK(!s2.common_nonzero_subobject(s_1, s_2));

  FiniteOracle jf = oracle_for(kJordanFree);
  CHECK(!jf.common_nonzero_subobject(jf.make_rep({1}, {mat1(0)}),
                                     jf.make_rep({1}, {mat1(1)})));
  CHECK(!jf.common_nonzero_subobject(jf.zero_rep(), jf.stalk(0)));
}

TEST_CASE("monoformness from the definition") {
  FiniteOracle s2 = oracle_for(kSigma2);
  CHECK(s2.is_monoform(s2.stalk(0)));
  CHECK(s2.is_monoform(s2.stalk(1)));
  CHECK(!s2.is_monoform(s2.zero_rep()));
  // the identity-arrow rep: its only proper nonzero submodule is S_2, the
  // quotient by it is S_1, and S_1 embeds in neither the rep nor S_2
  FiniteRep ident = s2.make_rep({1, 1}, {mat1(1)});
  CHECK(s2.is_monoform(ident));

  FiniteOracle j = oracle_for(kJordanSq);
  CHECK(!j.is_monoform(jordan_regular(j)));
  CHECK(j.is_monoform(j.stalk(0)));

  FiniteOracle jf = oracle_for(kJordanFree);
  CHECK(jf.is_monoform(jf.make_rep({1}, {mat1(1)})));
}

TEST_CASE("atom equivalence on monoform inputs") {
  FiniteOracle s2 = oracle_for(kSigma2);
  CHECK(s2.atom_equivalent(s2.stalk(0), s2.stalk(0)));
  CHECK(!s2.atom_equivalent(s2.stalk(0), s2.stalk(1)));

  FiniteOracle jf = oracle_for(kJordanFree);
  CHECK(!jf.atom_equivalent(jf.make_rep({1}, {mat1(1)}), jf.stalk(0)));

  FiniteOracle j = oracle_for(kJordanSq);
  CHECK_THROWS_AS(j.atom_equivalent(jordan_regular(j), j.stalk(0)),
                  UsageError);
}

TEST_CASE("atom equivalence is an equivalence relation at desk scale") {
  FiniteOracle s2 = oracle_for(kSigma2);
  std::vector<FiniteRep> monoforms;
  for (const auto& r : s2.enumerate_reps(2))
    if (!r.is_zero() && s2.is_monoform(r)) monoforms.push_back(r);
  REQUIRE(monoforms.size() >= 3);
  for (const auto& a : monoforms) CHECK(s2.atom_equivalent(a, a));
  for (const auto& a : monoforms)
    for (const auto& b : monoforms)
      CHECK(s2.atom_equivalent(a, b) == s2.atom_equivalent(b, a));
  for (const auto& a : monoforms)
    for (const auto& b : monoforms)
      for (const auto& c : monoforms)
        if (s2.atom_equivalent(a, b) && s2.atom_equivalent(b, c))
          CHECK(s2.atom_equivalent(a, c));
}

TEST_CASE("atom support of small modules") {
  FiniteOracle s2 = oracle_for(kSigma2);
  std::vector<FiniteRep> stalks = {s2.stalk(0), s2.stalk(1)};
  CHECK(s2.asupp(s2.zero_rep(), stalks).empty());
  CHECK(s2.asupp(s2.stalk(0), stalks) == std::vector<int>{0});
  FiniteRep ident = s2.make_rep({1, 1}, {mat1(1)});
  CHECK(s2.asupp(ident, stalks) == std::vector<int>{0, 1});
}

TEST_CASE("stalks satisfy every admissible relation set") {
  for (const char* dsl : {kJordanSq, kSigma2, kA3,
                          "vertices v; arrows x: v -> v, y: v -> v; "
                          "relations x*y - y*x, x^2, y^2; ring F3;"}) {
    FiniteOracle o = oracle_for(dsl);
    for (int v = 0; v < o.algebra().quiver().vertex_count(); ++v) {
      FiniteRep s = o.stalk(v);
      CHECK(o.check_relations(s));
      CHECK(o.is_monoform(s));
      CHECK(o.k_i(s, v).dim() == 1);
    }
  }
}

TEST_CASE("kernel functor values") {
  FiniteOracle jf = oracle_for(kJordanFree);
  CHECK(jf.k_i(jf.make_rep({1}, {mat1(1)}), 0).dim() == 0);

  LoadedInput in3 = load_input(
      "vertices v; arrows x: v -> v; relations x^3; ring F2;");
  FiniteOracle j3(in3.algebra, in3.relations);
  Mat nil = Mat::zero(3, 3);
  nil.at(1, 0) = 1;
  nil.at(2, 1) = 1;
  FiniteRep reg3 = j3.make_rep({3}, {nil});
  CHECK(j3.check_relations(reg3));
  CHECK(j3.k_i(reg3, 0).dim() == 1);

  // no arrow leaves the sink of the chain: the kernel there is everything
  FiniteOracle a3 = oracle_for(kA3);
  FiniteRep full = a3.make_rep(
      {2, 1, 1}, {Mat::zero(2, 1), Mat::zero(1, 1)});
  CHECK(a3.k_i(full, 0).dim() == 2);
}

TEST_CASE("kernels split across direct sums") {
  FiniteOracle s2 = oracle_for(kSigma2);
  FiniteRep a = s2.make_rep({1, 1}, {mat1(1)});
  FiniteRep b = s2.stalk(0);
  FiniteRep sum = s2.direct_sum(a, b);
  for (int v = 0; v < 2; ++v)
    CHECK(s2.k_i(sum, v).dim() == s2.k_i(a, v).dim() + s2.k_i(b, v).dim());

  FiniteOracle j = oracle_for(kJordanSq);
  FiniteRep reg = jordan_regular(j);
  CHECK(j.k_i(j.direct_sum(reg, reg), 0).dim() == 2 * j.k_i(reg, 0).dim());
}

TEST_CASE("submodule counts of direct sums dominate the product") {
  FiniteOracle s2 = oracle_for(kSigma2);
  FiniteRep s_1 = s2.stalk(0);
  FiniteRep s_2 = s2.stalk(1);
  CHECK(s2.submodules(s2.direct_sum(s_1, s_2)).size() >=
        s2.submodules(s_1).size() * s2.submodules(s_2).size());
  FiniteOracle j = oracle_for(kJordanSq);
  FiniteRep reg = jordan_regular(j);
  CHECK(j.submodules(j.direct_sum(reg, j.stalk(0))).size() >=
        j.submodules(reg).size() * j.submodules(j.stalk(0)).size());
}

TEST_CASE("monoform and support transfer along the stalk embedding") {
  for (const char* dsl : {kSigma2, kJordanSq}) {
    FiniteOracle o = oracle_for(dsl);
    int nv = o.algebra().quiver().vertex_count();
    std::vector<FiniteRep> stalks;
    for (int v = 0; v < nv; ++v) stalks.push_back(o.stalk(v));
    for (int v = 0; v < nv; ++v) {
      for (int d = 0; d <= 2; ++d) {
        FiniteRep m = o.stalk_module(v, d);
        bool base_monoform = d == 1;  // modules over a field: simple iff dim 1
        CHECK(o.is_monoform(m) == base_monoform);
        auto supp = o.asupp(m, stalks);
        if (d == 0)
          CHECK(supp.empty());
        else
          CHECK(supp == std::vector<int>{v});
      }
    }
  }
}

TEST_CASE("representation enumeration is bounded, filtered, deterministic") {
  FiniteOracle jf = oracle_for(kJordanFree);
  auto reps1 = jf.enumerate_reps(1);
  CHECK(reps1.size() == 3);  // zero, x=0, x=1

  FiniteOracle j = oracle_for(kJordanSq);
  auto reps = j.enumerate_reps(2);
  for (const auto& r : reps) CHECK(j.check_relations(r));
  // over F_2 with x^2 = 0: dims 0 (1), dims 1 (x=0), dims 2 (x any
  // square-zero 2x2 matrix: zero plus the three nonzero nilpotents)
  CHECK(reps.size() == 6);

  FiniteOracle s2 = oracle_for(kSigma2);
  CHECK(s2.enumerate_reps(2).size() == 7);

  auto again = j.enumerate_reps(2);
  CHECK(again == reps);

  FiniteOracle tiny = oracle_for(kJordanFree, OracleGuards{7, 1000000, 100000, 10});
  CHECK_THROWS_AS(tiny.enumerate_reps(3), ResourceError);
}

TEST_CASE("spectrum description checks at desk scale") {
  LoadedInput in = load_input(kJordanSq);
  FiniteOracle j(in.algebra, in.relations);
  OracleReport rep = verify_spectrum_description(j, 2);
  CHECK(rep.all_pass());
  REQUIRE(rep.find("stalks_pairwise_inequivalent") != nullptr);
  REQUIRE(rep.find("kernel_detects_nonzero") != nullptr);
  REQUIRE(rep.find("monoform_matches_unique_stalk") != nullptr);
  CHECK(rep.find("non_surjectivity_witnesses") == nullptr);

  FiniteOracle s2 = oracle_for(kSigma2);
  CHECK(verify_spectrum_description(s2, 2).all_pass());

  FiniteOracle jf = oracle_for(kJordanFree);
  OracleReport free_rep = verify_spectrum_description(jf, 1);
  const OracleCheck* w = free_rep.find("non_surjectivity_witnesses");
  REQUIRE(w != nullptr);
  REQUIRE(w->witnesses.size() == 1);
  CHECK(w->witnesses[0].dims == std::vector<int>{1});
  CHECK(w->witnesses[0].mats[0].at(0, 0) == 1);
  // the witness is monoform with vanishing kernel functor
  CHECK(jf.is_monoform(w->witnesses[0]));
  CHECK(jf.k_i(w->witnesses[0], 0).dim() == 0);
}

TEST_CASE("report json structure") {
  LoadedInput in = load_input(kJordanFree);
  FiniteOracle jf(in.algebra, in.relations);
  OracleReport rep = verify_spectrum_description(jf, 1);
  std::string text = report_json(jf, rep);
  auto parsed = nlohmann::json::parse(text);
  REQUIRE(parsed.contains("checks"));
  REQUIRE(parsed.contains("counts"));
  bool found = false;
  for (const auto& c : parsed["checks"]) {
    if (c["name"] == "non_surjectivity_witnesses") {
      found = true;
      REQUIRE(c["witnesses"].size() == 1);
      CHECK(c["witnesses"][0]["dims"]["v"] == 1);
      CHECK(c["witnesses"][0]["mats"]["x"][0][0] == 1);
    }
  }
  CHECK(found);
  CHECK(report_json(jf, rep) == text);  // deterministic
}

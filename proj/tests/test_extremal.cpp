#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "testutil.hpp"
#include "zslab/extremal.hpp"

using namespace zslab;

namespace {

std::set<std::vector<std::uint32_t>> as_set(const ExtremalFamily& fam) {
  std::set<std::vector<std::uint32_t>> out;
  fam.for_each_sequence([&](const std::vector<std::uint32_t>& t) { out.insert(t); });
  return out;
}

}  // namespace

TEST_CASE("is_extremal") {
  auto m7 = Modulus::factorize(7);
  auto q7 = unit_squares(m7);
  CHECK(is_extremal(Sequence{7, {1, 4}}, q7, ZeroSumMode::kSubsequence, 3));
  CHECK_FALSE(is_extremal(Sequence{7, {1, 6}}, q7, ZeroSumMode::kSubsequence, 3));
  CHECK_FALSE(is_extremal(Sequence{7, {1, 0}}, q7, ZeroSumMode::kSubsequence, 3));
  CHECK_FALSE(is_extremal(Sequence{7, {1}}, q7, ZeroSumMode::kSubsequence, 3));
  CHECK_THROWS_AS(is_extremal(Sequence{7, {1}}, q7, ZeroSumMode::kSubsequence, 0),
                  std::invalid_argument);
}

TEST_CASE("canonical expansion equals full enumeration") {
  std::mt19937_64 rng(20250809);
  int done = 0;
  while (done < 8) {
    const std::uint32_t n = 9 + 2 * (rng() % 13);  // odd 9..33
    auto m = Modulus::factorize(n);
    auto members = testutil::random_subgroup(n, rng);
    if (members.size() < 4) continue;
    auto w = custom_weights(m, members);
    REQUIRE(w.is_group());
    const std::uint32_t len = 2 + rng() % 2;
    for (auto mode : {ZeroSumMode::kSubsequence, ZeroSumMode::kConsecutive}) {
      auto canonical = enumerate_extremal(w, mode, len, EnumStrategy::kCanonical);
      auto full = enumerate_extremal(w, mode, len, EnumStrategy::kFull);
      REQUIRE(canonical.complete);
      REQUIRE(full.complete);
      CHECK(canonical.total_count() == full.sequences.size());
      CHECK(as_set(canonical) == as_set(full));
    }
    ++done;
  }
}

TEST_CASE("U(7) extremal families across lengths") {
  auto m7 = Modulus::factorize(7);
  auto u7 = units(m7);
  // D_{U(7)}(7) = 2: six extremal singletons, no extremal pairs.
  auto singles = enumerate_extremal(u7, ZeroSumMode::kSubsequence, 1, EnumStrategy::kFull);
  CHECK(singles.sequences.size() == 6);
  auto pairs = enumerate_extremal(u7, ZeroSumMode::kSubsequence, 2, EnumStrategy::kFull);
  CHECK(pairs.sequences.empty());
  CHECK(davenport_constant(u7).value == 2);
}

TEST_CASE("Q_7 extremal pairs, frozen") {
  auto q7 = unit_squares(Modulus::factorize(7));
  auto fam = enumerate_extremal(q7, ZeroSumMode::kSubsequence, 2, EnumStrategy::kFull);
  // (Q,Q) and (N,N) pairs: 18 in total. The pair form (x1 in Q, -x2 outside)
  // covers only the 9 (Q,Q) pairs; jacobi(-1,7) = -1.
  CHECK(fam.sequences.size() == 18);
  std::uint64_t matching = 0;
  FormParams params{7, 0};
  for (const auto& t : fam.sequences) {
    if (matches_form(Sequence{7, t}, FormId::kPairSplitQp, params)) ++matching;
  }
  CHECK(matching == 9);
  CHECK(matches_form(Sequence{7, {1, 1}}, FormId::kPairSplitQp, params));
  CHECK_FALSE(matches_form(Sequence{7, {3, 3}}, FormId::kPairSplitQp, params));
  CHECK_FALSE(matches_form(Sequence{7, {0, 1}}, FormId::kPairSplitQp, params));
}

TEST_CASE("extremal family closures") {
  auto m77 = Modulus::factorize(77);
  auto s77 = s_weights(m77);
  auto fam = enumerate_extremal(s77, ZeroSumMode::kSubsequence, 2, EnumStrategy::kFull);
  REQUIRE(fam.complete);
  std::set<std::vector<std::uint32_t>> all = as_set(fam);
  CHECK(all.size() == 3840);  // frozen by independent scan

  std::mt19937_64 rng(3);
  auto members = s77.members().to_vector();
  for (int trial = 0; trial < 100; ++trial) {
    auto it = all.begin();
    std::advance(it, rng() % all.size());
    auto t = *it;
    // permutation closure (mode D)
    std::reverse(t.begin(), t.end());
    CHECK(all.count(t));
    // orbit closure
    auto scaled = *it;
    const std::size_t pos = rng() % scaled.size();
    scaled[pos] = m77.mul(members[rng() % members.size()], scaled[pos]);
    CHECK(all.count(scaled));
  }

  // reversal closure for a C family
  auto cfam = enumerate_extremal(s77, ZeroSumMode::kConsecutive, 3, EnumStrategy::kFull);
  auto call = as_set(cfam);
  CHECK(call.size() == 9120);  // frozen by independent scan
  for (int trial = 0; trial < 100; ++trial) {
    auto it = call.begin();
    std::advance(it, rng() % call.size());
    auto t = *it;
    std::reverse(t.begin(), t.end());
    CHECK(call.count(t));
  }
}

TEST_CASE("matches_form literal bullets at 77") {
  FormParams p77_7{77, 7};
  // extl2 bullet 1: (x1,x2) image mod 11 D-extremal for Q_11, x3 = k*11.
  CHECK(matches_form(Sequence{77, {1, 1, 11}}, FormId::kExtl2Bullet1, p77_7));
  CHECK(matches_form(Sequence{77, {11, 1, 1}}, FormId::kExtl2Bullet1, p77_7));  // permuted
  CHECK_FALSE(matches_form(Sequence{77, {1, 1, 7}}, FormId::kExtl2Bullet1, p77_7));
  // extl2 bullet 2: only x1 coprime to 7; (x2,x3) lift mod 11 extremal.
  // x = 56 is 0 mod 7 and 1 mod 11.
  CHECK(matches_form(Sequence{77, {3, 56, 56}}, FormId::kExtl2Bullet2, p77_7));
  CHECK_FALSE(matches_form(Sequence{77, {3, 5, 56}}, FormId::kExtl2Bullet2, p77_7));
  // pair_split_S at 77.
  FormParams p77{77, 0};
  CHECK(matches_form(Sequence{77, {1, 2}}, FormId::kPairSplitS, p77));
  CHECK(matches_form(Sequence{77, {2, 1}}, FormId::kPairSplitS, p77));
  CHECK_FALSE(matches_form(Sequence{77, {2, 2}}, FormId::kPairSplitS, p77));
  // lext2 bullets are positionally rigid.
  CHECK(matches_form(Sequence{77, {11, 1, 11, 1, 11}}, FormId::kLext2Bullet1, p77_7));
  CHECK_FALSE(matches_form(Sequence{77, {1, 11, 11, 1, 11}}, FormId::kLext2Bullet1, p77_7));
  CHECK(matches_form(Sequence{77, {56, 56, 3, 56, 56}}, FormId::kLext2Bullet2, p77_7));
  CHECK_FALSE(matches_form(Sequence{77, {56, 56, 56, 3, 56}}, FormId::kLext2Bullet2, p77_7));
}

TEST_CASE("form ids parse") {
  for (const auto& name :
       {"pair_split_S", "pair_split_Qp", "extl3_bullet1", "extl3_bullet2",
        "extl2_bullet1", "extl2_bullet2", "lext2_bullet1", "lext2_bullet2"}) {
    CHECK(form_id_name(parse_form_id(name)) == name);
  }
  CHECK_THROWS_AS(parse_form_id("nope"), std::invalid_argument);
}

TEST_CASE("verify dexts2 at 77 and the jacobi(-1) failure at 91") {
  auto r77 = verify_theorem("dexts2", 77, std::nullopt);
  CHECK(r77.verdict == Verdict::kVerified);
  std::uint64_t lhs = 0, rhs = 0;
  for (auto& [k, v] : r77.stats) {
    if (k == "lhs_total") lhs = v;
    if (k == "rhs_total") rhs = v;
  }
  CHECK(lhs == 3840);
  CHECK(rhs == 3840);

  // jacobi(-1,91) = -1: pairs (x1,x2) with x1 outside S(91) and -x2 in S(91)
  // are S-extremal but match neither the U-family nor the stated pair form.
  auto r91 = verify_theorem("dexts2", 91, std::nullopt);
  CHECK(r91.verdict == Verdict::kCounterexample);
  CHECK(r91.counterexample_total == 1296);
  REQUIRE(!r91.counterexamples.empty());
  auto s91 = s_weights(Modulus::factorize(91));
  for (const auto& cex : r91.counterexamples) {
    CHECK_FALSE(has_zero_subsequence(cex, s91));  // genuinely S-extremal
  }
  // The one-directional reading (dexts) fails the same way at 91.
  auto r91d = verify_theorem("dexts", 91, std::nullopt);
  CHECK(r91d.verdict == Verdict::kCounterexample);
}

TEST_CASE("verify cexts at 77") {
  auto r = verify_theorem("cexts", 77, std::nullopt);
  CHECK(r.verdict == Verdict::kVerified);
  std::uint64_t lhs = 0;
  for (auto& [k, v] : r.stats) {
    if (k == "lhs_total") lhs = v;
  }
  CHECK(lhs == 9120);
}

TEST_CASE("verify extl2 at every omega-2 instance, frozen family sizes") {
  const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint64_t>> expected = {
      {77, 7, 53100},   {77, 11, 68580},  {91, 7, 79056},
      {91, 13, 113400}, {143, 11, 287280}, {143, 13, 322200},
  };
  for (auto [n, p, size] : expected) {
    auto r = verify_theorem("extl2", n, p);
    CHECK(r.verdict == Verdict::kVerified);
    std::uint64_t lhs = 1, rhs = 0;
    for (auto& [k, v] : r.stats) {
      if (k == "lhs_total") lhs = v;
      if (k == "rhs_total") rhs = v;
    }
    CHECK(lhs == size);
    CHECK(rhs == size);
  }
}

TEST_CASE("verify cexts at 91 and 143, frozen family sizes") {
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> expected = {
      {91, 14256}, {143, 31920}};
  for (auto [n, size] : expected) {
    auto r = verify_theorem("cexts", n, std::nullopt);
    CHECK(r.verdict == Verdict::kVerified);
    std::uint64_t lhs = 0;
    for (auto& [k, v] : r.stats) {
      if (k == "lhs_total") lhs = v;
    }
    CHECK(lhs == size);
  }
}

TEST_CASE("verify lext2 at (77,7), with the permutation-reading diagnostic") {
  auto r = verify_theorem("lext2", 77, 7);
  CHECK(r.verdict == Verdict::kVerified);
  std::uint64_t lhs = 0;
  bool saw_diag = false;
  for (auto& [k, v] : r.stats) {
    if (k == "lhs_total") lhs = v;
    if (k == "permutation_closed_reading_holds") {
      saw_diag = true;
      CHECK(v == 0);  // the five positions are genuinely rigid
    }
  }
  CHECK(lhs == 694200);
  CHECK(saw_diag);
}

TEST_CASE("verify qp_remark: true at 13, counterexamples at 7 and 11") {
  auto r13 = verify_theorem("qp_remark", 13, std::nullopt);
  CHECK(r13.verdict == Verdict::kVerified);
  auto r7 = verify_theorem("qp_remark", 7, std::nullopt);
  CHECK(r7.verdict == Verdict::kCounterexample);
  auto r11 = verify_theorem("qp_remark", 11, std::nullopt);
  CHECK(r11.verdict == Verdict::kCounterexample);
}

TEST_CASE("hypothesis gates reject off-hypothesis runs unless exploratory") {
  CHECK_THROWS_AS(verify_theorem("dexts2", 15, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem("extl2", 77, std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem("extl2", 77, 13), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem("extl3", 77, 7), std::invalid_argument);
  CHECK_THROWS_AS(verify_theorem("nonsense", 77, std::nullopt), std::invalid_argument);
  VerifyOptions expl;
  expl.exploratory = true;
  auto r = verify_theorem("dexts2", 15, std::nullopt, expl);  // runs, any verdict
  CHECK((r.verdict == Verdict::kVerified || r.verdict == Verdict::kCounterexample));
}

TEST_CASE("verify dextl degenerate omega=1") {
  auto r = verify_theorem("dextl", 13, 13);
  CHECK(r.verdict == Verdict::kVerified);
  auto rc = verify_theorem("cextl", 13, 13);
  CHECK(rc.verdict == Verdict::kVerified);
}

TEST_CASE("class-level comparison agrees with full expansion") {
  // Force extl2(77,7) through the class path and compare with the default
  // expansion path.
  auto expanded = verify_theorem("extl2", 77, 7);
  VerifyOptions opts;
  opts.expand_limit = 1;
  auto classes = verify_theorem("extl2", 77, 7, opts);
  CHECK(expanded.verdict == Verdict::kVerified);
  CHECK(classes.verdict == Verdict::kVerified);
  std::uint64_t audits = 0;
  for (auto& [k, v] : classes.stats) {
    if (k == "audit_checked") audits = v;
    if (k == "audit_failures") CHECK(v == 0);
  }
  CHECK(audits > 0);
}

TEST_CASE("omega-3 theorems at 1001 via the class path") {
  auto d = verify_theorem("dexts2", 1001, std::nullopt);
  CHECK(d.verdict == Verdict::kVerified);
  auto e3 = verify_theorem("extl3", 1001, 13);
  CHECK(e3.verdict == Verdict::kVerified);
  auto cl = verify_theorem("cextl", 1001, 11);
  CHECK(cl.verdict == Verdict::kVerified);
}

TEST_CASE("inclusion lemmas at 77") {
  for (const auto& id : {"u2s", "s2l", "u2l", "gl2"}) {
    LemmaParams p;
    p.n = 77;
    auto r = verify_lemma(id, p);
    CHECK(r.verdict == Verdict::kVerified);
    CHECK(r.counterexample_total == 0);
  }
  LemmaParams bad;
  bad.n = 77;
  CHECK_THROWS_AS(verify_lemma("s2l3", bad), std::invalid_argument);  // needs omega 3
  LemmaParams p1001;
  p1001.n = 1001;
  auto r = verify_lemma("s2l3", p1001);
  CHECK(r.verdict == Verdict::kVerified);
}

TEST_CASE("constructive lemmas exhaustive at 77") {
  for (const auto& id : {"gs", "gs2", "gl", "lifts", "obs3"}) {
    LemmaParams p;
    p.n = 77;
    auto r = verify_lemma(id, p);
    CHECK(r.verdict == Verdict::kVerified);
    CHECK(r.counterexample_total == 0);
    CHECK_FALSE(r.seed.has_value());  // exhaustive scans record no seed
  }
}

TEST_CASE("lemma sampling is deterministic") {
  LemmaParams p;
  p.n = 1001;
  p.p_prime = 7;
  VerifyOptions opts;
  opts.samples = 2000;
  auto a = verify_lemma("gl", p, opts);
  auto b = verify_lemma("gl", p, opts);
  CHECK(a.verdict == Verdict::kVerified);
  CHECK(a.seed == b.seed);
  CHECK(a.stats == b.stats);
}

TEST_CASE("lemma parameter validation") {
  LemmaParams p;
  p.n = 77;
  p.d = 5;
  CHECK_THROWS_AS(verify_lemma("u2s", p), std::invalid_argument);
  p.d = 7;
  auto r = verify_lemma("u2s", p);
  CHECK(r.verdict == Verdict::kVerified);
  LemmaParams sq;
  sq.n = 63;  // 9*7: d = 9 is a square, d = 7 valid
  sq.d = 9;
  CHECK_THROWS_AS(verify_lemma("u2s", sq), std::invalid_argument);
  sq.d = 7;
  CHECK(verify_lemma("u2s", sq).verdict == Verdict::kVerified);
  CHECK_THROWS_AS(verify_lemma("gs", LemmaParams{63}), std::invalid_argument);
}

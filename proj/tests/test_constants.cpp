#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <random>

#include "testutil.hpp"
#include "zslab/constants.hpp"
#include "zslab/extremal.hpp"

using namespace zslab;

TEST_CASE("prime quadratic-residue constants") {
  for (std::uint32_t p : {7u, 11u, 13u}) {
    auto q = unit_squares(Modulus::factorize(p));
    auto d = davenport_constant(q);
    auto c = consecutive_constant(q);
    CHECK(d.value == 3);
    CHECK(d.exhaustive);
    CHECK(c.value == 3);
    CHECK(c.exhaustive);
    REQUIRE(d.certificate);
    CHECK(d.certificate->terms.size() == 2);
    CHECK(certify_lower_bound(*d.certificate, q, ZeroSumMode::kSubsequence));
    CHECK(certify_lower_bound(*c.certificate, q, ZeroSumMode::kConsecutive));
  }
}

TEST_CASE("deterministic lex-least certificate for Q_7") {
  auto q7 = unit_squares(Modulus::factorize(7));
  auto d = davenport_constant(q7);
  REQUIRE(d.certificate);
  CHECK(d.certificate->terms == std::vector<std::uint32_t>{1, 1});
  auto again = davenport_constant(q7);
  CHECK(again.certificate->terms == d.certificate->terms);
  CHECK(again.nodes == d.nodes);
}

TEST_CASE("omega-2 constants for U, S and L") {
  for (std::uint32_t n : {77u}) {
    auto m = Modulus::factorize(n);
    CHECK(davenport_constant(units(m)).value == 3);
    CHECK(consecutive_constant(units(m)).value == 4);
    CHECK(davenport_constant(s_weights(m)).value == 3);
    CHECK(consecutive_constant(s_weights(m)).value == 4);
    for (auto [p, e] : m.factors()) {
      CHECK(davenport_constant(l_weights(m, p)).value == 4);
      CHECK(consecutive_constant(l_weights(m, p)).value == 6);
    }
  }
}

TEST_CASE("weight set containing zero gives constant 1") {
  auto m = Modulus::factorize(9);
  auto w = custom_weights(m, {0, 1});
  auto d = davenport_constant(w);
  CHECK(d.value == 1);
  CHECK(d.exhaustive);
  CHECK_FALSE(d.certificate);
  CHECK(consecutive_constant(w).value == 1);
}

TEST_CASE("orbit-pruned constants equal unpruned full-tuple search") {
  // The canonical search against a frontier scan over raw residue tuples
  // (enumerate_extremal with the full strategy applies no orbit reduction).
  std::mt19937_64 rng(20250809);
  int done = 0;
  while (done < 10) {
    const std::uint32_t n = 9 + 2 * (rng() % 7);  // odd, 9..21
    auto m = Modulus::factorize(n);
    auto members = testutil::random_subgroup(n, rng);
    if (members.size() < 4) continue;
    auto w = custom_weights(m, members);
    REQUIRE(w.is_group());
    SearchBudget capped;
    capped.depth_cap = 5;
    for (auto mode : {ZeroSumMode::kSubsequence, ZeroSumMode::kConsecutive}) {
      auto pruned = zero_sum_constant(w, mode, capped, 1);
      if (!pruned.exhaustive) continue;
      std::uint32_t k = 1;
      for (;;) {
        auto fam = enumerate_extremal(w, mode, k, EnumStrategy::kFull);
        REQUIRE(fam.complete);
        if (fam.sequences.empty()) break;
        ++k;
        REQUIRE(k <= pruned.value);
      }
      CHECK(k == pruned.value);
    }
    ++done;
  }
}

TEST_CASE("predictions") {
  auto p77 = predicted_constants(units(Modulus::factorize(77)));
  CHECK(p77.d == 3);
  CHECK(p77.c == 4);
  auto q13 = predicted_constants(unit_squares(Modulus::factorize(13)));
  CHECK(q13.d == 3);
  CHECK(q13.c == 3);
  auto s1001 = predicted_constants(s_weights(Modulus::factorize(1001)));
  CHECK(s1001.d == 4);
  CHECK(s1001.c == 8);
  auto l77 = predicted_constants(l_weights(Modulus::factorize(77), 7));
  CHECK(l77.d == 4);
  CHECK(l77.c == 6);
  auto l1001 = predicted_constants(l_weights(Modulus::factorize(1001), 11));
  CHECK(l1001.d == 4);
  CHECK(l1001.c == 8);
  // Hypothesis failures are reported as not covered.
  CHECK_FALSE(predicted_constants(s_weights(Modulus::factorize(15))).covered());
  CHECK_FALSE(predicted_constants(units(Modulus::factorize(9))).covered());
  CHECK_FALSE(predicted_constants(unit_squares(Modulus::factorize(77))).covered());
}

TEST_CASE("computed equals predicted where covered, small moduli") {
  for (std::uint32_t n : {3u, 5u, 7u, 11u, 13u, 15u, 21u, 33u, 35u, 45u, 77u}) {
    auto m = Modulus::factorize(n);
    auto u = units(m);
    auto pu = predicted_constants(u);
    if (pu.covered()) {
      CHECK(davenport_constant(u).value == *pu.d);
      CHECK(consecutive_constant(u).value == *pu.c);
    }
    auto s = s_weights(m);
    auto ps = predicted_constants(s);
    if (ps.covered()) {
      CHECK(davenport_constant(s).value == *ps.d);
      CHECK(consecutive_constant(s).value == *ps.c);
    }
  }
}

TEST_CASE("certificates certify and C dominates D") {
  for (std::uint32_t n : {7u, 45u, 77u}) {
    auto m = Modulus::factorize(n);
    for (const auto& w : {units(m), s_weights(m)}) {
      auto d = davenport_constant(w);
      auto c = consecutive_constant(w);
      CHECK(c.value >= d.value);
      if (d.certificate) CHECK(certify_lower_bound(*d.certificate, w, d.mode));
      if (c.certificate) CHECK(certify_lower_bound(*c.certificate, w, c.mode));
    }
  }
}

TEST_CASE("anti-monotonicity in the weight set") {
  auto m = Modulus::factorize(77);
  auto u = units(m);
  auto s = s_weights(m);
  auto l = l_weights(m, 7);
  CHECK(davenport_constant(u).value <= davenport_constant(s).value);
  CHECK(davenport_constant(u).value <= davenport_constant(l).value);
  CHECK(consecutive_constant(u).value <= consecutive_constant(l).value);
}

TEST_CASE("node budget produces honest bound-only results") {
  auto m = Modulus::factorize(77);
  auto l = l_weights(m, 7);
  SearchBudget tiny;
  tiny.max_nodes = 50;
  auto r = zero_sum_constant(l, ZeroSumMode::kConsecutive, tiny);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.value <= 6);  // a lower bound, never an overclaim
  auto full = consecutive_constant(l);
  CHECK(full.exhaustive);
  CHECK(full.value == 6);
  CHECK(r.value <= full.value);
}

TEST_CASE("depth cap reports bound when exceeded") {
  auto m = Modulus::factorize(77);
  auto l = l_weights(m, 7);
  SearchBudget capped;
  capped.depth_cap = 3;
  auto r = zero_sum_constant(l, ZeroSumMode::kConsecutive, capped);
  CHECK_FALSE(r.exhaustive);
  CHECK(r.value == 4);  // extremal length-3 found, nothing above explored
  REQUIRE(r.certificate);
  CHECK(r.certificate->terms.size() == 3);
}

TEST_CASE("constructed length-5 certificate for C_L(77;7) >= 6") {
  // Alternating nonzero multiples of 11 with unit lifts whose mod-11 images
  // form a window-free pair for Q_11.
  auto m = Modulus::factorize(77);
  auto l7 = l_weights(m, 7);
  Sequence cert{77, {11, 1, 11, 1, 11}};
  CHECK(certify_lower_bound(cert, l7, ZeroSumMode::kConsecutive));
  CHECK_FALSE(certify_lower_bound(Sequence{77, {11, 1, 11, 1, 0}}, l7,
                                  ZeroSumMode::kConsecutive));
}

TEST_CASE("window-free doubling certificate") {
  auto m77 = Modulus::factorize(77);
  auto cert77 = window_free_certificate(m77);
  CHECK(cert77.terms.size() == 3);
  CHECK(certify_lower_bound(cert77, units(m77), ZeroSumMode::kConsecutive));
  auto m1001 = Modulus::factorize(1001);
  auto cert = window_free_certificate(m1001);
  CHECK(cert.terms.size() == 7);
  CHECK(cert.terms == std::vector<std::uint32_t>{143, 13, 143, 1, 143, 13, 143});
  CHECK_THROWS_AS(window_free_certificate(Modulus::factorize(9)),
                  std::invalid_argument);
}

TEST_CASE("ZSLAB_THREADS resolves when no explicit width is given") {
  setenv("ZSLAB_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  CHECK(resolve_threads(5) == 5);
  setenv("ZSLAB_THREADS", "garbage", 1);
  CHECK(resolve_threads(0) >= 1);
  unsetenv("ZSLAB_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("threads do not change results") {
  auto m = Modulus::factorize(91);
  auto l = l_weights(m, 13);
  auto one = zero_sum_constant(l, ZeroSumMode::kConsecutive, {}, 1);
  auto four = zero_sum_constant(l, ZeroSumMode::kConsecutive, {}, 4);
  CHECK(one.value == four.value);
  CHECK(one.nodes == four.nodes);
  REQUIRE(one.certificate);
  REQUIRE(four.certificate);
  CHECK(one.certificate->terms == four.certificate->terms);
}

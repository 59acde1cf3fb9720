#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>

#include "finzeta/relations.hpp"
#include "finzeta/verify.hpp"

using namespace finzeta;

namespace {

SymbolComb comb(std::initializer_list<std::pair<SignedComposition, long>> terms, int l = 1) {
  SymbolComb out;
  for (const auto& [s, c] : terms) add_term(out, ZetaSymbol{s, false, l, 0}, Rational(c));
  return out;
}

Relation weight_four() {
  return Relation(1,
                  comb({{{2, 1, -1}, 1},
                        {{2, -1, 1}, 1},
                        {{-1, 2, 1}, 1},
                        {{2, -2}, 1},
                        {{-3, 1}, 1},
                        {{2, -1, -1}, -8},
                        {{-1, 2, -1}, -4},
                        {{-3, -1}, -4}}),
                  {}, "weight four");
}

Relation false_relation() { return Relation(1, comb({{{2, 1}, 1}}), ClosedForm::beta_power(1, {3}), "false"); }

}  // namespace

TEST(VerifyRelation, WeightFourVerifies) {
  auto r = verify_relation(weight_four(), primes_in(7, 199));
  EXPECT_EQ(r.status, Status::verified);
  EXPECT_TRUE(r.counterexamples.empty());
  EXPECT_EQ(r.primes_checked, primes_in(7, 199).size());
}

TEST(VerifyRelation, FalseRelationRefutedAtSeven) {
  auto r = verify_relation(false_relation(), primes_in(5, 50));
  EXPECT_EQ(r.status, Status::refuted);
  ASSERT_FALSE(r.counterexamples.empty());
  EXPECT_EQ(r.counterexamples[0].p, 7U);
  EXPECT_EQ(r.counterexamples[0].lhs, 3U);
  EXPECT_EQ(r.counterexamples[0].rhs, 1U);
  EXPECT_EQ(r.primes_skipped, (std::vector<u64>{5}));
  EXPECT_EQ(exit_code({r}), 1);
}

TEST(VerifyRelation, RefutationIsReproducible) {
  auto r = verify_relation(false_relation(), primes_in(7, 120), Budget::capped, 3);
  for (const auto& c : r.counterexamples) {
    auto again = verify_relation(false_relation(), {c.p});
    ASSERT_EQ(again.counterexamples.size(), 1U);
    EXPECT_EQ(again.counterexamples[0].lhs, c.lhs);
    EXPECT_EQ(again.counterexamples[0].rhs, c.rhs);
  }
}

TEST(VerifyRelation, Vacuous) {
  Relation r = weight_four();
  r.set_min_prime(1000);
  auto rep = verify_relation(r, primes_in(7, 199));
  EXPECT_EQ(rep.status, Status::vacuous);
  EXPECT_EQ(rep.primes_checked, 0U);
  EXPECT_EQ(rep.primes_skipped.size(), primes_in(7, 199).size());
  EXPECT_EQ(exit_code({rep}), 0);
  EXPECT_EQ(verify_relation(weight_four(), {}).status, Status::vacuous);
}

TEST(VerifyRelation, RejectsComposites) { EXPECT_THROW(verify_relation(weight_four(), {7, 9}), std::invalid_argument); }

TEST(VerifyRelation, BernoulliBudget) {
  Relation r(1, comb({{{2, 1}, 1}}), ClosedForm::beta_power(3, {3}), "beta side");
  ASSERT_EQ(setenv("FES_BERNOULLI_CAP", "50", 1), 0);
  auto capped = verify_relation(r, primes_in(5, 100));
  auto full = verify_relation(r, primes_in(7, 100), Budget::unlimited);
  auto plain = verify_relation(weight_four(), primes_in(7, 100));
  unsetenv("FES_BERNOULLI_CAP");
  EXPECT_EQ(capped.primes_skipped_budget, primes_in(51, 100));
  EXPECT_EQ(capped.status, Status::verified);
  EXPECT_TRUE(full.primes_skipped_budget.empty());
  EXPECT_EQ(full.primes_checked, primes_in(7, 100).size());
  EXPECT_TRUE(plain.primes_skipped_budget.empty());
}

TEST(VerifyNonlinear, ConcatenationIdentity) {
  // zeta*(rev s) = sum over splittings of (-1)^{d+r} prod zeta(s_j), s = (1, -2)
  const SignedComposition s{1, -2};
  ProductCheck pc{1, {}, {}, "concat (1,-2)"};
  pc.lhs.push_back({Rational(1), {ZetaSymbol{reverse(s), true, 1, 0}}});
  for (const auto& [sign, factors] : antipode_expand(s, AntipodeMode::m_to_concat)) {
    Product prod{Rational(-sign), {}};
    for (const auto& f : factors) prod.factors.push_back({f, false, 1, 0});
    pc.lhs.push_back(prod);
  }
  auto r = verify_nonlinear(pc, primes_in(7, 97));
  EXPECT_EQ(r.status, Status::verified);
  EXPECT_EQ(r.primes_checked, primes_in(7, 97).size());
}

TEST(VerifyNonlinear, StuffleHomomorphismInstance) {
  ProductCheck pc{2, {}, {}, "zeta(1)^2"};
  pc.lhs.push_back({Rational(1), {ZetaSymbol{{1}, false, 2, 0}, ZetaSymbol{{1}, false, 2, 0}}});
  pc.lhs.push_back({Rational(-2), {ZetaSymbol{{1, 1}, false, 2, 0}}});
  pc.lhs.push_back({Rational(-1), {ZetaSymbol{{2}, false, 2, 0}}});
  EXPECT_EQ(verify_nonlinear(pc, primes_in(7, 97)).status, Status::verified);
}

TEST(VerifyNonlinear, StarPlainConsistency) {
  for (const auto& s : enumerate(4, true)) {
    ProductCheck pc{1, {}, {}, "star " + to_string(s)};
    pc.lhs.push_back({Rational(1), {ZetaSymbol{s, true, 1, 0}}});
    for (const auto& c : coarsenings(s)) pc.lhs.push_back({Rational(-1), {ZetaSymbol{c.comp, false, 1, 0}}});
    EXPECT_EQ(verify_nonlinear(pc, primes_in(7, 97)).status, Status::verified) << to_string(s);
  }
}

TEST(VerifyNonlinear, WrongProductIsRefuted) {
  ProductCheck pc{1, {}, {}, "wrong"};
  pc.lhs.push_back({Rational(1), {ZetaSymbol{{-1}, false, 1, 0}, ZetaSymbol{{-1}, false, 1, 0}}});
  pc.lhs.push_back({Rational(-1), {ZetaSymbol{{-1, -1}, false, 1, 0}}});
  EXPECT_EQ(verify_nonlinear(pc, primes_in(7, 97)).status, Status::refuted);
}

TEST(VerifyTable, WeightSixDepthThree) {
  auto reps = verify_table("wt6-depth3", primes_in(11, 199));
  ASSERT_EQ(reps.size(), 9U);
  for (const auto& r : reps) EXPECT_EQ(r.status, Status::verified) << r.provenance;
  EXPECT_EQ(exit_code(reps), 0);
}

TEST(VerifyTable, CorrectionsOffRefuteExactlyTheFlaggedEntries) {
  auto reps = verify_table("superbity2-wt4", primes_in(5, 199), Corrections::off);
  std::size_t refuted = 0;
  for (const auto& r : reps) {
    EXPECT_EQ(r.refuted(), r.corrected) << r.provenance;
    refuted += r.refuted();
  }
  EXPECT_EQ(refuted, 3U);
  for (const auto& r : verify_table("superbity2-wt4", primes_in(5, 199))) EXPECT_EQ(r.status, Status::verified);
}

TEST(VerifyTable, UnknownName) { EXPECT_THROW(verify_table("nope", {7}), std::invalid_argument); }

TEST(VerifyTable, ConjecturalStatus) {
  auto reps = verify_table("conjectural-superbity2", first_primes(60));
  for (const auto& r : reps) {
    EXPECT_TRUE(r.conjectural);
    EXPECT_EQ(r.status, Status::verified) << r.provenance;
  }
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  std::vector<CheckItem> items;
  for (const auto& name : {"superbity2-wt5", "depth2"})
    for (const auto& e : table(name)) items.push_back(make_item(e.relation));
  items.push_back(make_item(false_relation()));
  auto primes = primes_in(5, 151);
  auto one = sweep(items, primes, {Budget::capped, 1});
  auto four = sweep(items, primes, {Budget::capped, 4});
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(to_json(one[i]).dump(), to_json(four[i]).dump());
  auto shuffled = primes;
  std::reverse(shuffled.begin(), shuffled.end());
  EXPECT_EQ(to_json(sweep(items, shuffled, {Budget::capped, 2}).back()).dump(), to_json(one.back()).dump());
}

TEST(Sweep, StatusInvariants) {
  std::vector<CheckItem> items{make_item(weight_four()), make_item(false_relation())};
  for (const auto& r : sweep(items, primes_in(2, 60))) {
    EXPECT_EQ(r.status == Status::refuted, !r.counterexamples.empty());
    EXPECT_EQ(r.status == Status::vacuous, r.primes_checked == 0);
    EXPECT_EQ(status_name(r.status), to_json(r)["status"].get<std::string>());
  }
}

// Every relation the generators emit must hold at every prime past its guard.
TEST(Sweep, EveryGeneratedRelationVerifies) {
  const unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
  for (bool sg : {false, true})
    for (int l = 1; l <= 2; ++l)
      for (int w = 1; w <= 7; ++w) {
        std::vector<CheckItem> items;
        for (Family f : all_families()) {
          std::vector<Relation> rels;
          try {
            rels = generate(f, w, l, sg);
          } catch (const std::invalid_argument&) {
            continue;
          }
          for (const auto& r : rels) items.push_back(make_item(r));
        }
        if (l == 1)
          for (const auto& pc : generate_product_checks(w, sg)) items.push_back(make_item(pc));
        std::size_t bad = 0;
        for (const auto& r : sweep(items, primes_in(static_cast<u64>(w) + 3, 199), {Budget::capped, jobs})) {
          EXPECT_NE(r.status, Status::refuted) << r.provenance;
          bad += r.refuted();
        }
        EXPECT_EQ(bad, 0U) << "w=" << w << " l=" << l << (sg ? " signed" : "");
      }
}

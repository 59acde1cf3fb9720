#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "finzeta/linalg.hpp"

using namespace finzeta;

namespace {

RationalMatrix dense(std::size_t cols, const std::vector<std::vector<long>>& rows) {
  RationalMatrix m(cols);
  for (const auto& r : rows) {
    std::vector<Rational> v;
    for (long x : r) v.emplace_back(x);
    m.add_dense(v);
  }
  return m;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> val(-4, 4), den(1, 3), zero(0, 2);
  RationalMatrix m(cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Rational> v(cols);
    for (auto& x : v) {
      if (zero(rng) == 0) continue;
      x = Rational(val(rng), den(rng));
      x.canonicalize();
    }
    m.add_dense(v);
  }
  return m;
}

std::size_t rref_rank(const RationalMatrix& m) {
  Rref rr(m.cols());
  for (const auto& r : m.rows()) rr.insert(r);
  return rr.rank();
}

}  // namespace

TEST(Rank, Examples) {
  auto id = dense(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(rank(id), 3U);
  auto dbl = dense(3, {{1, 2, 3}, {2, 4, 6}});
  EXPECT_EQ(rank(dbl), 1U);
  EXPECT_EQ(rank(RationalMatrix(4)), 0U);
  EXPECT_EQ(rank(dense(2, {{0, 0}})), 0U);
}

TEST(Matrix, RowsAreValidated) {
  RationalMatrix m(3);
  EXPECT_THROW(m.add_row({{3, Rational(1)}}), std::out_of_range);
  EXPECT_THROW(m.add_row({{0, Rational(0)}}), std::invalid_argument);
  EXPECT_THROW(m.add_row({{1, Rational(1)}, {0, Rational(1)}}), std::invalid_argument);
  m.add_dense({Rational(0), Rational(5), Rational(0)});
  ASSERT_EQ(m.rows().size(), 1U);
  EXPECT_EQ(m.rows()[0].size(), 1U);
  EXPECT_EQ(make_row({{2, Rational(0)}, {1, Rational(3)}}).size(), 1U);
}

TEST(Rank, EliminationRoutesAgreeOnRandomMatrices) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<std::size_t> dim(1, 8);
  for (int i = 0; i < 200; ++i) {
    auto m = random_matrix(rng, dim(rng), dim(rng));
    const std::size_t r = rank_gauss(m);
    EXPECT_EQ(rank(m), r);
    EXPECT_EQ(rank_bareiss(m), r);
    EXPECT_EQ(rref_rank(m), r);
    EXPECT_LE(rank_mod(m), r);
  }
}

TEST(Rank, RowPermutationInvariance) {
  std::mt19937 rng(777);
  for (int i = 0; i < 50; ++i) {
    auto m = random_matrix(rng, 7, 6);
    auto rows = m.rows();
    std::shuffle(rows.begin(), rows.end(), rng);
    RationalMatrix p(m.cols());
    for (auto& r : rows) p.add_row(r);
    EXPECT_EQ(rank(m), rank(p));
    std::vector<std::size_t> targets{3, 4, 5};
    EXPECT_EQ(quotient_dim(targets, m), quotient_dim(targets, p));
  }
}

TEST(Rref, ReducedForm) {
  Rref rr(3);
  EXPECT_TRUE(rr.insert({{0, Rational(2)}, {1, Rational(4)}}));
  EXPECT_TRUE(rr.insert({{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_FALSE(rr.insert({{0, Rational(1)}, {1, Rational(3)}, {2, Rational(1)}}));
  EXPECT_EQ(rr.rank(), 2U);
  EXPECT_EQ(rr.pivots(), (std::vector<std::size_t>{0, 1}));
  // pivot rows are monic and clear the other pivot columns
  EXPECT_EQ(rr.pivot_row(0), (SparseRow{{0, Rational(1)}, {2, Rational(-2)}}));
  EXPECT_EQ(rr.pivot_row(1), (SparseRow{{1, Rational(1)}, {2, Rational(1)}}));
  EXPECT_TRUE(rr.contains({{0, Rational(1)}, {1, Rational(3)}, {2, Rational(1)}}));
  EXPECT_FALSE(rr.contains({{2, Rational(1)}}));
}

TEST(QuotientDim, NoRelationsCountsDistinctTargets) {
  RationalMatrix none(5);
  EXPECT_EQ(quotient_dim({1, 3, 3, 4}, none), 3U);
  EXPECT_EQ(quotient_dim({1, 3, 3, 4}, Rref(5)), 3U);
}

TEST(QuotientDim, MonotoneAndStackedRank) {
  std::mt19937 rng(99);
  for (int i = 0; i < 40; ++i) {
    auto m = random_matrix(rng, 6, 7);
    std::vector<std::size_t> targets{4, 5, 6};
    RationalMatrix partial(m.cols());
    Rref rr(m.cols());
    std::size_t prev = quotient_dim(targets, partial);
    EXPECT_EQ(prev, 3U);
    for (const auto& row : m.rows()) {
      partial.add_row(row);
      rr.insert(row);
      const std::size_t q = quotient_dim(targets, partial);
      EXPECT_LE(q, prev);
      EXPECT_EQ(q, quotient_dim(targets, rr));  // targets are the last columns
      RationalMatrix stacked = partial;
      for (std::size_t t : targets) stacked.add_row({{t, Rational(1)}});
      EXPECT_GE(rank(stacked), rank(partial));
      EXPECT_EQ(rank(stacked) - rank(partial), q);
      prev = q;
    }
  }
}

TEST(Express, Basic) {
  // columns: 0 = z, 1 = other, 2 = g1, 3 = g2
  Rref rr(4);
  rr.insert({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(-3)}});
  rr.insert({{1, Rational(1)}, {3, Rational(-1, 2)}});
  auto e = express(0, {2, 3}, rr);
  ASSERT_TRUE(e.has_value());
  EXPECT_EQ(e->at(2), Rational(3));
  EXPECT_EQ(e->at(3), Rational(-1, 2));
  auto self = express(3, {3}, rr);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(self->at(3), Rational(1));
  EXPECT_FALSE(express(0, {2}, rr).has_value());
}

TEST(SymbolIndexTest, Order) {
  SymbolIndex<std::string> ix;
  EXPECT_EQ(ix.add("b"), 0U);
  EXPECT_EQ(ix.add("a"), 1U);
  EXPECT_EQ(ix.add("b"), 0U);
  EXPECT_EQ(ix.size(), 2U);
  EXPECT_EQ(ix.key(1), "a");
  EXPECT_FALSE(ix.find("c").has_value());
  EXPECT_THROW((void)ix.at("c"), std::out_of_range);
}

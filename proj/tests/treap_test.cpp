#include "randlab/treap.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "randlab/randsrc.hpp"

namespace randlab {
namespace {

double harmonic(std::size_t n) {
  double h = 0;
  for (std::size_t i = 1; i <= n; ++i) h += 1.0 / static_cast<double>(i);
  return h;
}

// Builds a treap on keys 1..n where key i gets priority priorities[i-1].
Treap<int> build(const std::vector<std::uint64_t>& priorities) {
  Treap<int> t;
  for (std::size_t i = 0; i < priorities.size(); ++i) t.insert_with_priority(static_cast<int>(i + 1), priorities[i]);
  t.validate();
  return t;
}

TEST(Treap, ThreeKeysMiddleDepthAveragesOne) {
  std::vector<std::uint64_t> pr{1, 2, 3};
  double total = 0;
  int orders = 0;
  do {
    total += static_cast<double>(build(pr).find(2).depth);
    ++orders;
  } while (std::next_permutation(pr.begin(), pr.end()));
  EXPECT_EQ(orders, 6);
  EXPECT_DOUBLE_EQ(total / orders, 1.0);
}

// Over all n! priority orders, the mean depth of key j is H_j + H_{n-j+1} - 2.
TEST(Treap, ExhaustiveDepthMatchesHarmonicFormula) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::uint64_t> pr(n);
    std::iota(pr.begin(), pr.end(), 1);
    std::vector<double> totals(n, 0.0);
    int orders = 0;
    do {
      const auto t = build(pr);
      for (std::size_t j = 1; j <= n; ++j) totals[j - 1] += static_cast<double>(t.find(static_cast<int>(j)).depth);
      ++orders;
    } while (std::next_permutation(pr.begin(), pr.end()));
    for (std::size_t j = 1; j <= n; ++j) {
      EXPECT_NEAR(totals[j - 1] / orders, harmonic(j) + harmonic(n - j + 1) - 2, 1e-12) << "n=" << n << " j=" << j;
    }
  }
}

// Deleting key l rotates it down once per node on the two facing spines;
// over all orders that averages 2 - 1/l - 1/(n-l+1).
TEST(Treap, ExhaustiveDeleteRotationsMatchSpineFormula) {
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<std::uint64_t> pr(n);
    std::iota(pr.begin(), pr.end(), 1);
    std::vector<double> totals(n, 0.0);
    int orders = 0;
    do {
      for (std::size_t l = 1; l <= n; ++l) {
        auto t = build(pr);
        totals[l - 1] += static_cast<double>(t.erase(static_cast<int>(l)));
        t.validate();
        EXPECT_EQ(t.size(), n - 1);
        EXPECT_FALSE(t.contains(static_cast<int>(l)));
      }
      ++orders;
    } while (std::next_permutation(pr.begin(), pr.end()));
    for (std::size_t l = 1; l <= n; ++l) {
      const double expected = 2.0 - 1.0 / static_cast<double>(l) - 1.0 / static_cast<double>(n - l + 1);
      EXPECT_NEAR(totals[l - 1] / orders, expected, 1e-12) << "n=" << n << " l=" << l;
    }
  }
}

// An insert followed by deleting the same key undoes the rotations.
TEST(Treap, InsertRotationsEqualDeleteSpines) {
  RandomSource src(3);
  Treap<int> t;
  for (int k = 0; k < 200; k += 2) t.insert(k, src);
  for (int k = 1; k < 200; k += 14) {
    const auto before = t.serialize();
    const auto up = t.insert(k, src);
    const auto down = t.erase(k);
    EXPECT_EQ(up, down);
    EXPECT_EQ(t.serialize(), before);
  }
}

TEST(Treap, RandomOperationsKeepInvariants) {
  RandomSource src(11);
  Treap<std::uint64_t> t;
  std::set<std::uint64_t> model;
  for (int step = 0; step < 5000; ++step) {
    const auto key = uniform_below(src, 500);
    if (bernoulli(src, 0.6)) {
      if (model.insert(key).second) {
        t.insert(key, src);
      } else {
        EXPECT_THROW(t.insert(key, src), Error);
      }
    } else if (model.erase(key)) {
      t.erase(key);
    } else {
      EXPECT_THROW(t.erase(key), Error);
    }
    if (step % 500 == 0) t.validate();
  }
  t.validate();
  EXPECT_EQ(t.size(), model.size());
  EXPECT_EQ(t.keys(), std::vector<std::uint64_t>(model.begin(), model.end()));
}

TEST(Treap, ErrorCodes) {
  RandomSource src(1);
  Treap<int> t;
  t.insert(5, src);
  try {
    t.insert(5, src);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::duplicate_key);
  }
  try {
    t.erase(6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::missing_key);
  }
}

TEST(Treap, SplitAndMerge) {
  RandomSource src(21);
  Treap<int> t;
  for (int k = 0; k < 100; ++k) t.insert(k * 3, src);
  EXPECT_THROW(t.split(151), Error);
  auto parts = t.split(150);
  parts.left.validate();
  parts.right.validate();
  EXPECT_EQ(parts.pivot, 150);
  EXPECT_EQ(parts.left.size(), 50u);
  EXPECT_EQ(parts.right.size(), 49u);
  for (int k : parts.left.keys()) EXPECT_LT(k, 150);
  for (int k : parts.right.keys()) EXPECT_GT(k, 150);

  auto joined = Treap<int>::merge(std::move(parts.left), std::move(parts.right));
  joined.validate();
  EXPECT_EQ(joined.size(), 99u);
  EXPECT_FALSE(joined.contains(150));

  Treap<int> a, b;
  a.insert(10, src);
  b.insert(5, src);
  EXPECT_THROW(Treap<int>::merge(std::move(a), std::move(b)), Error);
}

TEST(Treap, SameSeedSameShape) {
  RandomSource a(8), b(8);
  Treap<int> x, y;
  for (int k = 0; k < 50; ++k) {
    x.insert(k, a);
    y.insert(k, b);
  }
  EXPECT_EQ(x.serialize(), y.serialize());
}

TEST(Treap, SerializeSmallTree) {
  Treap<int> t;
  t.insert_with_priority(2, 9);
  t.insert_with_priority(1, 5);
  EXPECT_EQ(t.serialize(), "(2,9 (1,5 . .) .)");
}

}  // namespace
}  // namespace randlab

#include <gtest/gtest.h>

#include <random>

#include <minbase/linalg.hpp>

using namespace minbase;

static matrix random_matrix(field const &f, std::size_t r, std::size_t c, std::mt19937_64 &rng)
{
  matrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = elem{static_cast<std::uint32_t>(rng() % f.q())};
  return m;
}

TEST(Rref, Examples)
{
  auto f = field::of_order(2);
  auto r = rref(matrix::from_ints(f, {{1, 1, 0}, {0, 1, 1}}));
  EXPECT_EQ(r.rank, 2u);
  EXPECT_EQ(r.m, matrix::from_ints(f, {{1, 0, 1}, {0, 1, 1}}));
  EXPECT_EQ(rref(matrix(f, 3, 3)).rank, 0u);
  auto id = matrix::identity(f, 4);
  EXPECT_EQ(rref(id).m, id);
  EXPECT_EQ(rref(id).rank, 4u);
}

TEST(Rref, IdempotentOnRandom)
{
  std::mt19937_64 rng(1);
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
    auto f = field::of_order(q);
    for (int t = 0; t < 100; ++t) {
      auto m = random_matrix(f, 1 + rng() % 5, 1 + rng() % 6, rng);
      auto r = rref(m);
      auto r2 = rref(r.m);
      EXPECT_EQ(r.m, r2.m);
      EXPECT_EQ(r.rank, r2.rank);
    }
  }
}

TEST(Solve, Examples)
{
  auto f = field::of_order(2);
  auto s = solve_linear(matrix::identity(f, 3), {elem{1}, elem{0}, elem{1}});
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, (vec{elem{1}, elem{0}, elem{1}}));
  EXPECT_TRUE(s->kernel.empty());
  EXPECT_FALSE(solve_linear(matrix(f, 2, 2), {elem{1}, elem{0}}));
  auto s2 = solve_linear(matrix::from_ints(f, {{1, 1}}), {elem{1}});
  ASSERT_TRUE(s2);
  EXPECT_EQ(s2->particular, (vec{elem{1}, elem{0}}));
  ASSERT_EQ(s2->kernel.size(), 1u);
  EXPECT_EQ(s2->kernel[0], (vec{elem{1}, elem{1}}));
}

TEST(Solve, RandomSolutionsSatisfySystem)
{
  std::mt19937_64 rng(2);
  auto f = field::of_order(5);
  for (int t = 0; t < 100; ++t) {
    auto a = random_matrix(f, 3, 4, rng);
    vec b(3);
    for (auto &x : b)
      x = elem{static_cast<std::uint32_t>(rng() % 5)};
    auto s = solve_linear(a, b);
    if (!s)
      continue;
    EXPECT_EQ(a.apply(s->particular), b);
    for (auto const &k : s->kernel)
      EXPECT_EQ(a.apply(k), vec(3));
    EXPECT_EQ(s->kernel.size(), 4 - rank(a));
  }
}

TEST(Inverse, RoundTrip)
{
  std::mt19937_64 rng(3);
  auto f = field::of_order(9);
  int found = 0;
  for (int t = 0; t < 50; ++t) {
    auto m = random_matrix(f, 4, 4, rng);
    auto inv = inverse(m);
    EXPECT_EQ(inv.has_value(), det(m).v != 0);
    if (inv) {
      EXPECT_EQ(m * *inv, matrix::identity(f, 4));
      ++found;
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Subspace, LatticeOps)
{
  auto f = field::of_order(2);
  auto e = [&](int i) {
    vec v(3);
    v[i] = f.one();
    return v;
  };
  auto u = subspace::span(f, 3, {e(0), e(1)});
  auto w = subspace::span(f, 3, {e(1), e(2)});
  EXPECT_EQ(u.intersect(w), subspace::span(f, 3, {e(1)}));
  EXPECT_EQ(u.sum(u), u);
  EXPECT_EQ(u.intersect(u), u);
  auto swap = matrix::from_ints(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
  EXPECT_EQ(subspace::span(f, 3, {e(0)}).image_under(swap), subspace::span(f, 3, {e(1)}));
}

TEST(Subspace, RandomDimensionFormulaAndEquality)
{
  std::mt19937_64 rng(4);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto f = field::of_order(q);
    for (int t = 0; t < 1000; ++t) {
      auto u = subspace::span(random_matrix(f, rng() % 4, 5, rng));
      auto w = subspace::span(random_matrix(f, rng() % 4, 5, rng));
      EXPECT_EQ(u.sum(w).dim() + u.intersect(w).dim(), u.dim() + w.dim());
      EXPECT_EQ(u == w, u.contains(w) && w.contains(u));
      EXPECT_TRUE(u.sum(w).contains(u));
      EXPECT_TRUE(w.contains(u.intersect(w)));
    }
  }
}

// Brute force over all of M(d, q): count matrices stabilizing every subspace.
static std::size_t brute_stabilizer_dim(field const &f, std::size_t d,
                                        std::vector<subspace> const &subs)
{
  std::size_t n = d * d, total = 1, count = 0;
  for (std::size_t i = 0; i < n; ++i)
    total *= f.q();
  for (std::size_t idx = 0; idx < total; ++idx) {
    matrix x(f, d, d);
    std::size_t t = idx;
    for (std::size_t i = 0; i < n; ++i) {
      x(i / d, i % d) = elem{static_cast<std::uint32_t>(t % f.q())};
      t /= f.q();
    }
    bool ok = true;
    for (auto const &u : subs)
      for (auto const &v : u.vectors())
        if (!u.contains(x.apply(v)))
          ok = false;
    count += ok;
  }
  std::size_t dim = 0;
  while (count > 1) {
    count /= f.q();
    ++dim;
  }
  return dim;
}

TEST(StabilizingAlgebra, Examples)
{
  auto f2 = field::of_order(2);
  EXPECT_EQ(stabilizing_algebra({}, f2, 2).dim(), 4u);
  EXPECT_THROW(stabilizing_algebra({}), error);
  auto e1 = subspace::span(f2, 2, {{elem{1}, elem{0}}});
  EXPECT_EQ(stabilizing_algebra({e1}).dim(), 3u);
  EXPECT_EQ(brute_stabilizer_dim(f2, 2, {e1}), 3u);

  auto f3 = field::of_order(3);
  std::vector<subspace> lines{subspace::span(f3, 2, {{elem{1}, elem{0}}}),
                              subspace::span(f3, 2, {{elem{0}, elem{1}}}),
                              subspace::span(f3, 2, {{elem{1}, elem{1}}})};
  EXPECT_EQ(stabilizing_algebra(lines).dim(), 1u);
  EXPECT_EQ(brute_stabilizer_dim(f3, 2, lines), 1u);
}

TEST(StabilizingAlgebra, MatchesBruteForceAndRecheck)
{
  std::mt19937_64 rng(5);
  for (auto [q, d] : std::vector<std::pair<std::uint32_t, std::size_t>>{{2, 3}, {3, 2}, {4, 2}, {2, 4}}) {
    auto f = field::of_order(q);
    for (int t = 0; t < (d == 4 ? 3 : 15); ++t) {
      std::vector<subspace> subs;
      for (int i = 0, n = 1 + rng() % 3; i < n; ++i)
        subs.push_back(subspace::span(random_matrix(f, 1 + rng() % (d - 1), d, rng)));
      auto alg = stabilizing_algebra(subs);
      for (auto const &x : alg.basis)
        for (auto const &u : subs)
          EXPECT_TRUE(u.contains(u.image_under(x)) || rank(x) < d);
      for (auto const &x : alg.basis)
        for (auto const &u : subs)
          for (auto const &v : u.vectors())
            EXPECT_TRUE(u.contains(x.apply(v)));
      EXPECT_EQ(alg.dim(), brute_stabilizer_dim(f, d, subs));
    }
  }
}

TEST(AlgebraClosure, Examples)
{
  auto f3 = field::of_order(3);
  EXPECT_EQ(algebra_closure({matrix::identity(f3, 3)}, f3, 3).dim(), 1u);
  matrix path(f3, 3, 3);
  for (int i = 0; i < 2; ++i)
    path(i, i + 1) = path(i + 1, i) = f3.one();
  auto alg = algebra_closure({matrix::unit(f3, 3, 0, 0), path}, f3, 3);
  EXPECT_EQ(alg.dim(), 9u);
  EXPECT_TRUE(alg.full());

  auto f5 = field::of_order(5);
  auto diag = matrix::from_ints(f5, {{1, 0}, {0, 2}});
  EXPECT_EQ(algebra_closure({diag}, f5, 2).dim(), 2u);
}

TEST(AlgebraClosure, MultiplicationClosed)
{
  std::mt19937_64 rng(6);
  auto f = field::of_order(2);
  for (int t = 0; t < 20; ++t) {
    std::vector<matrix> seeds;
    seeds.push_back(random_matrix(f, 4, 4, rng));
    if (t % 2)
      seeds.push_back(random_matrix(f, 4, 4, rng));
    auto alg = algebra_closure(seeds, f, 4);
    for (auto const &a : alg.basis)
      for (auto const &b : alg.basis)
        EXPECT_TRUE(algebra_contains(alg, a * b));
  }
}

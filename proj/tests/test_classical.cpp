#include <gtest/gtest.h>

#include <minbase/classical.hpp>

using namespace minbase;

// Closure of matrix generators by breadth-first multiplication.
static std::size_t matrix_closure(std::vector<matrix> const &gens, std::size_t cap = 1u << 22)
{
  struct mh
  {
    std::size_t operator()(matrix const &m) const { return m.hash(); }
  };
  std::unordered_set<matrix, mh> seen;
  auto id = matrix::identity(gens[0].fld(), gens[0].rows());
  std::vector<matrix> queue{id};
  seen.insert(id);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (auto const &g : gens) {
      auto n = queue[i] * g;
      if (seen.insert(n).second) {
        queue.push_back(n);
        if (queue.size() > cap)
          return 0;
      }
    }
  return queue.size();
}

TEST(Order, Examples)
{
  EXPECT_EQ(group_order(make_spec("SL", 2, 3)), 24);
  EXPECT_EQ(group_order(make_spec("Sp", 2, 2)), 6);
  EXPECT_EQ(group_order(make_spec("SL", 2, 2)), 6);
  EXPECT_EQ(group_order(make_spec("GL", 3, 2)), 168);
  EXPECT_EQ(group_order(make_spec("SU", 2, 4)), 18);
  EXPECT_EQ(group_order(make_spec("O+", 2, 3)), 4);
  EXPECT_EQ(group_order(make_spec("O-", 2, 3)), 8);
  EXPECT_EQ(group_order(make_spec("Oo", 3, 3)), 48);
  EXPECT_EQ(group_order(make_spec("O+", 4, 2)), 72);
}

struct spec_case
{
  const char *fam;
  std::size_t d;
  std::uint32_t q;
};

// Orders derived by brute-force enumeration of all matrices preserving the form.
TEST(Order, MatchesEnumeration)
{
  std::vector<spec_case> cases{{"SL", 2, 2}, {"SL", 2, 3}, {"SL", 2, 4}, {"SL", 3, 2}, {"GL", 2, 3},
                               {"Sp", 2, 3}, {"Sp", 4, 2}, {"SU", 2, 4}, {"SU", 3, 4}, {"O+", 2, 2},
                               {"O+", 2, 5}, {"O-", 2, 4}, {"O+", 4, 2}, {"O-", 4, 2}, {"Oo", 3, 3}, {"Oo", 3, 5}};
  for (auto c : cases) {
    auto s = make_spec(c.fam, c.d, c.q);
    EXPECT_EQ(bigint(detail::enumerate_group(s).size()), group_order(s)) << c.fam << c.d << " " << c.q;
  }
}

TEST(Generators, PreserveFormAndCertify)
{
  std::vector<spec_case> cases;
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (std::size_t d = 2; d <= 6; ++d) {
      cases.push_back({"SL", d, q});
      if (d % 2 == 0) {
        cases.push_back({"Sp", d, q});
        cases.push_back({"O+", d, q});
        cases.push_back({"O-", d, q});
      } else if (q % 2) {
        cases.push_back({"Oo", d, q});
      }
      if (q == 4)
        cases.push_back({"SU", d, q});
    }
  for (auto c : cases) {
    auto s = make_spec(c.fam, c.d, c.q);
    long double nvec = std::pow((long double)c.q, (long double)c.d);
    if (nvec > 20000)
      continue;
    auto gs = generators(s);
    for (auto const &g : gs.gens) {
      EXPECT_TRUE(preserves(s.form, g));
      if (s.fam == family::SL)
        EXPECT_EQ(det(g), s.f.one());
    }
    EXPECT_TRUE(gs.certified) << c.fam << c.d << " " << c.q << " " << gs.method;
  }
}

TEST(Generators, ClosureMatchesOrder)
{
  std::vector<spec_case> cases{{"SL", 2, 2}, {"SL", 2, 3}, {"Sp", 2, 3}, {"Sp", 4, 2}, {"SU", 2, 4},
                               {"O+", 4, 2}, {"O-", 4, 2}, {"Oo", 3, 3}, {"SL", 3, 3}};
  for (auto c : cases) {
    auto s = make_spec(c.fam, c.d, c.q);
    EXPECT_EQ(bigint(matrix_closure(generators(s).gens)), group_order(s)) << c.fam << c.d << c.q;
  }
}

TEST(Generators, Sp2EqualsSL2)
{
  for (std::uint32_t q : {2u, 3u, 4u}) {
    auto sp = generators(make_spec("Sp", 2, q)).gens;
    auto sl = generators(make_spec("SL", 2, q)).gens;
    auto both = sp;
    both.insert(both.end(), sl.begin(), sl.end());
    EXPECT_EQ(matrix_closure(sp), matrix_closure(both));
    EXPECT_EQ(matrix_closure(sl), matrix_closure(both));
  }
}

TEST(Order, Prop32LowerBound)
{
  // |G| > q^{d^2/t - d} with t = 1 (SL), 2 (Sp, O), 2 for SU measured in q0 = sqrt(q)
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (std::size_t d = 2; d <= 10; ++d) {
      auto check = [&](const char *fam, double t) {
        auto s = make_spec(fam, d, q);
        double lhs = detail::log_of(group_order(s));
        double rhs = (d * d / t - d) * std::log((double)q);
        EXPECT_GT(lhs, rhs - 1e-9) << fam << d << " " << q;
      };
      check("SL", 1);
      if (d % 2 == 0) {
        check("Sp", 2);
        check("O+", 2);
        check("O-", 2);
      } else if (q % 2) {
        check("Oo", 2);
      }
      if (q == 4)
        check("SU", 2);
    }
}

TEST(Pairs, SLGeneratingPair)
{
  auto f1 = field::of_order(5);
  auto p1 = sl_generating_pair(1, f1);
  EXPECT_EQ(p1.first, matrix::identity(f1, 1));
  for (std::uint32_t q : {2u, 3u}) {
    auto f = field::of_order(q);
    auto p = sl_generating_pair(2, f);
    EXPECT_TRUE(p.certified);
    EXPECT_EQ(det(p.first), f.one());
    EXPECT_EQ(det(p.second), f.one());
    EXPECT_EQ(matrix_closure({p.first, p.second}), q == 2 ? 6u : 24u);
  }
}

TEST(Pairs, AlgebraPairs)
{
  auto f3 = field::of_order(3);
  auto c = full_algebra_symmetric_pair(3, f3);
  EXPECT_EQ(c.first, matrix::unit(f3, 3, 0, 0));
  EXPECT_EQ(algebra_closure({c.first, c.second}, f3, 3).dim(), 9u);
  for (std::uint32_t q : {2u, 3u, 4u, 5u})
    for (std::size_t k = 1; k <= 5; ++k) {
      auto f = field::of_order(q);
      auto s = full_algebra_symmetric_pair(k, f);
      EXPECT_EQ(s.first, s.first.transpose());
      EXPECT_EQ(s.second, s.second.transpose());
      EXPECT_TRUE(algebra_closure({s.first, s.second}, f, k).full());
      auto e = endo_generating_pair(k, f);
      EXPECT_TRUE(algebra_closure({e.first, e.second}, f, k).full());
    }
  auto f5 = field::of_order(5);
  auto e4 = endo_generating_pair(4, f5);
  EXPECT_EQ(algebra_closure({e4.first, e4.second}, f5, 4).dim(), 16u);
}

#include <gtest/gtest.h>

#include <chrono>

#include <minbase/permgrp.hpp>

using namespace minbase;

TEST(Perm, CyclesRoundTrip)
{
  auto p = perm_from_cycles("(1 2 3)(4 5)", 6);
  EXPECT_EQ(perm_to_cycles(p), "(1 2 3)(4 5)");
  EXPECT_TRUE(perm_is_identity(perm_mul(p, perm_inv(p))));
  EXPECT_THROW(perm_from_cycles("(1 9)", 6), error);
}

TEST(SchreierSims, Examples)
{
  EXPECT_EQ(schreier_sims(symmetric_group(4)).order(), 24);
  EXPECT_EQ(schreier_sims(alternating_group(5)).order(), 60);
  EXPECT_EQ(schreier_sims(alternating_group(6)).order(), 360);
  auto s5 = symmetric_group(5);
  EXPECT_EQ(schreier_sims(induce_on_subsets(s5, 2)).order(), 120);
  EXPECT_THROW(schreier_sims(s5, 3), error);
}

TEST(SchreierSims, MatchesClosure)
{
  for (std::size_t m = 2; m <= 7; ++m) {
    EXPECT_EQ(schreier_sims(symmetric_group(m)).order(), closure_size(symmetric_group(m)));
    EXPECT_EQ(schreier_sims(alternating_group(m)).order(), closure_size(alternating_group(m)));
  }
  for (std::size_t m = 4; m <= 7; ++m)
    for (std::size_t k = 2; k <= m / 2; ++k) {
      auto g = induce_on_subsets(symmetric_group(m), k);
      EXPECT_EQ(schreier_sims(g).order(), closure_size(g));
    }
  perm_group_spec d8{4, {perm_from_cycles("(1 2 3 4)", 4), perm_from_cycles("(1 3)", 4)}, "D8"};
  EXPECT_EQ(schreier_sims(d8).order(), 8);
  EXPECT_EQ(closure_size(d8), 8u);
}

TEST(SchreierSims, KnownOrderChainAgrees)
{
  auto g = induce_on_subsets(symmetric_group(9), 3);
  auto det = schreier_sims(g);
  EXPECT_EQ(det.order(), factorial(9));
  auto rnd = chain_known_order(perm_action{g.degree}, g.generators, factorial(9));
  EXPECT_EQ(rnd.order(), factorial(9));
  for (auto const &s : det.levels()[0].gens)
    EXPECT_TRUE(rnd.contains(s));
  EXPECT_THROW(chain_known_order(perm_action{g.degree}, g.generators, factorial(9) * 2), error);
}

TEST(Induce, Degrees)
{
  EXPECT_EQ(induce_on_subsets(symmetric_group(4), 2).degree, 6u);
  EXPECT_EQ(induce_on_partitions(symmetric_group(4), 2, 2).degree, 3u);
  for (std::size_t a = 2; a <= 4; ++a)
    for (std::size_t b = 2; b <= 3; ++b)
      EXPECT_EQ(bigint(partitions(a, b).size()), partition_count(a, b));
  auto dom = k_subsets(6, 3);
  EXPECT_TRUE(std::is_sorted(dom.begin(), dom.end(), [](auto x, auto y) {
    // lexicographic order on sorted tuples
    for (int i = 0; i < 64; ++i) {
      bool bx = (x >> i) & 1, by = (y >> i) & 1;
      if (bx != by)
        return bx;
    }
    return false;
  }));
}

TEST(PointwiseStabilizer, Examples)
{
  auto s3 = symmetric_group(3);
  EXPECT_EQ(pointwise_stabilizer(s3, 6, {0, 1}).order, 1);
  EXPECT_EQ(pointwise_stabilizer(symmetric_group(4), 24, {0}).order, 6);
  auto g = induce_on_subsets(symmetric_group(5), 2);
  auto dom = k_subsets(5, 2);
  auto idx = [&](std::uint64_t mask) {
    return static_cast<std::uint32_t>(std::find(dom.begin(), dom.end(), mask) - dom.begin());
  };
  // {1,2},{2,3},{4,5}: points 1,2,3 are distinguished, 4 and 5 are not
  auto st = pointwise_stabilizer(g, 120, {idx(0b00011), idx(0b00110), idx(0b11000)});
  EXPECT_EQ(st.order, 2);
  auto st2 = pointwise_stabilizer(g, 120, {idx(0b00011), idx(0b00110), idx(0b01100)});
  EXPECT_EQ(st2.order, 1);
}

TEST(Bruteforce, Examples)
{
  auto g = induce_on_subsets(symmetric_group(5), 2);
  auto r = min_base_bruteforce(g, 120);
  EXPECT_EQ(r.b, 3u);
  EXPECT_EQ(pointwise_stabilizer(g, 120, r.witness).order, 1);
  EXPECT_EQ(min_base_bruteforce(symmetric_group(4), 24).b, 3u);
  // Sym(4) on partitions(2,2) induces Sym(3) on 3 points: b = 2
  auto p = induce_on_partitions(symmetric_group(4), 2, 2);
  auto ord = schreier_sims(p).order();
  EXPECT_EQ(ord, 6);
  auto rp = min_base_bruteforce(p, ord);
  EXPECT_EQ(rp.b, 2u);
  // exhaustive check over all subsets of the 3-point domain
  std::size_t best = 99;
  for (std::uint32_t mask = 0; mask < 8; ++mask) {
    std::vector<std::uint32_t> pts;
    for (std::uint32_t i = 0; i < 3; ++i)
      if (mask >> i & 1)
        pts.push_back(i);
    if (pointwise_stabilizer(p, ord, pts).order == 1)
      best = std::min(best, pts.size());
  }
  EXPECT_EQ(best, rp.b);
}

TEST(ImplicitActions, PartitionChain)
{
  auto s8 = symmetric_group(8);
  partition_action act{2, 4};
  auto ch = chain_known_order(act, s8.generators, factorial(8));
  EXPECT_EQ(ch.order(), factorial(8));
  subset_action sa{7, 3};
  auto ch2 = chain_known_order(sa, symmetric_group(7).generators, factorial(7));
  EXPECT_EQ(ch2.order(), factorial(7));
}

#include <gtest/gtest.h>

#include <minbase/driver.hpp>

using namespace minbase;

TEST(Json, SubsetsAreOneIndexed)
{
  EXPECT_EQ(subset_json(0b101, 5).dump(), "[1,3]");
  EXPECT_EQ(subset_from_json(json::parse("[1,3]"), 5), 0b101u);
  EXPECT_THROW(subset_from_json(json::parse("[0]"), 5), error);
  EXPECT_THROW(subset_from_json(json::parse("[6]"), 5), error);
}

TEST(Json, PartitionsRoundTripAndValidate)
{
  for (auto c : partitions(3, 2))
    EXPECT_EQ(partition_from_json(partition_json(c, 3, 2), 3, 2), c);
  EXPECT_THROW(partition_from_json(json::parse("[[1,2],[3,4]]"), 3, 2), error);
  EXPECT_THROW(partition_from_json(json::parse("[[1,2],[2,4],[5,6]]"), 3, 2), error);
  EXPECT_THROW(partition_from_json(json::parse("[[1,2,3],[4],[5,6]]"), 3, 2), error);
}

TEST(Json, SubspacesRoundTrip)
{
  field f = field::of_order(4);
  auto U = subspace::span(f, 3, {vec{f.one(), f.from_encoding(2), f.zero()}, vec{f.zero(), f.one(), f.one()}});
  EXPECT_TRUE(subspace_from_json(f, subspace_json(U), 3) == U);
  EXPECT_THROW(vec_from_json(f, json::parse("[0,4,1]"), 3), error);
  EXPECT_THROW(vec_from_json(f, json::parse("[0,1]"), 3), error);
}

TEST(Json, ActionRoundTrip)
{
  for (auto s : {R"({"kind":"subsets","group":"alt","m":9,"k":3})", R"({"kind":"partitions","a":3,"b":4})",
                 R"({"kind":"subspaces","family":"Sp","d":4,"q":3,"k":2,"orbit":"nondegenerate"})",
                 R"({"kind":"pairs","d":5,"q":2,"k":2,"flags":false})", R"({"kind":"tensor","n1":2,"n2":3,"q":2})"}) {
    auto j = json::parse(s);
    EXPECT_EQ(action_json(action_from_json(j)), j);
  }
  EXPECT_THROW(action_from_json(json::parse("{}")), error);
}

TEST(Driver, ConstructVerifyEveryKind)
{
  for (auto s : {R"({"kind":"subsets","m":9,"k":3})", R"({"kind":"partitions","a":3,"b":3})",
                 R"({"kind":"partitions","a":2,"b":2})",
                 R"({"kind":"subspaces","family":"SU","d":4,"q":4,"k":2,"orbit":"totally_singular"})",
                 R"({"kind":"subspaces","family":"O-","d":6,"q":3,"k":2,"orbit":"nondegenerate"})",
                 R"({"kind":"pairs","d":5,"q":2,"k":2,"flags":true})", R"({"kind":"vectors","d":4,"q":3})",
                 R"({"kind":"subfield","d":3,"q":9,"r":2})", R"({"kind":"tensor","n1":2,"n2":3,"q":2})"}) {
    auto x = action_from_json(json::parse(s));
    auto cand = construct(x, 0);
    EXPECT_EQ(cand["size"].get<std::size_t>(), cand["elements"].size());
    // through text, as a file would
    auto back = json::parse(cand.dump());
    auto cert = verify_candidate(back);
    EXPECT_TRUE(is_base(cert.status)) << s;
    auto drop = back;
    drop["elements"].erase(drop["elements"].size() - 1);
    if (x.kind != "subfield" && x.kind != "tensor" && x.kind != "vectors" && drop["elements"].size() > 0) {
      auto c2 = verify_candidate(drop);
      if (c2.status == cert_status::not_a_base)
        EXPECT_FALSE(std::holds_alternative<std::monostate>(c2.witness)) << s;
    }
  }
}

TEST(Driver, Deterministic)
{
  auto x = action_from_json(json::parse(R"({"kind":"subspaces","family":"O+","d":8,"q":2,"k":4,"orbit":"totsing"})"));
  EXPECT_EQ(construct(x, 5).dump(), construct(x, 5).dump());
  auto y = action_from_json(json::parse(R"({"kind":"partitions","a":4,"b":3})"));
  EXPECT_EQ(construct(y, 2).dump(), construct(y, 2).dump());
}

TEST(Driver, Bruteforce)
{
  auto x = action_from_json(json::parse(R"({"kind":"subsets","m":5,"k":2})"));
  auto r = bruteforce(x, {});
  EXPECT_EQ(r["b"], 3);
  EXPECT_EQ(r["witness"].size(), 3u);
  std::vector<std::uint64_t> sets;
  for (auto const &s : r["witness"])
    sets.push_back(subset_from_json(s, 5));
  EXPECT_TRUE(is_base(verify_subset_base(5, sets).status));
  auto v = action_from_json(json::parse(R"({"kind":"vectors","d":2,"q":3})"));
  EXPECT_EQ(bruteforce(v, {})["b"], 2);
  caps small;
  small.degree_cap = 9;
  EXPECT_THROW(bruteforce(x, small), error);
}

TEST(Driver, VerifyRejectsMalformed)
{
  EXPECT_THROW(verify_candidate(json::parse(R"({"elements":[]})")), error);
  EXPECT_THROW(verify_candidate(json::parse(R"({"action":{"kind":"subsets","m":5,"k":2},"elements":[[1,2,3]]})")),
               error);
  EXPECT_THROW(verify_candidate(json::parse(R"({"action":{"kind":"cubes"},"elements":[]})")), error);
}

TEST(Driver, BoundRows)
{
  auto r = eval_bounds(sp_affine_instance(4, 3));
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.degree, 81);
  auto h = sp_hyperplane_instance(2, 2, 1);
  EXPECT_EQ(h.degree, 10);
  EXPECT_TRUE(eval_bounds(h).violations.empty());
  EXPECT_EQ(sp_hyperplane_instance(2, 2, -1).degree, 6);
  EXPECT_THROW(sp_hyperplane_instance(2, 3, 1), error);
  auto in = instance_for(action_from_json(json::parse(R"({"kind":"partitions","a":2,"b":2})")));
  EXPECT_EQ(in.order, 6);
  EXPECT_EQ(in.degree, 3);
}

TEST(Survey, OrderIndependentOfJobs)
{
  auto grid = grid_from_json(json::parse(R"([{"kind":"subsets","m":8,"k":2},{"kind":"partitions","a":2,"b":3},
      {"kind":"subspaces","family":"SL","d":4,"q":2,"k":2},{"kind":"vectors","d":4,"q":2}])"));
  auto a = run_survey(grid, 0, {}, true, 1);
  auto b = run_survey(grid, 0, {}, true, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].row.dump(), b[i].row.dump());
    EXPECT_TRUE(a[i].ok) << a[i].row.dump();
  }
  std::vector<bound_report> reps;
  for (auto const &r : a)
    reps.push_back(*r.report);
  auto csv = bound_reports_csv(reps);
  EXPECT_EQ(csv.substr(0, 40), "instance_id,family,params,n,log2_order,b");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

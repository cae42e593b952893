#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <minbase/bounds.hpp>
#include <minbase/classical.hpp>
#include <minbase/subspace_orbit.hpp>

using namespace minbase;

namespace {

double lo_d(interval const &x) { return x.lo.convert_to<double>(); }
double hi_d(interval const &x) { return x.hi.convert_to<double>(); }

// floor/ceil of x * 2^t for a rational x
bigint floor_scaled(rational const &x, unsigned t)
{
  rational y = x * rational(bigint(1) << t);
  return boost::multiprecision::numerator(y) / boost::multiprecision::denominator(y);
}

} // namespace

TEST(Log2Interval, EnclosesByExactPowers)
{
  // 2^floor(lo 2^t) <= n^(2^t) <= 2^ceil(hi 2^t), all in integers
  std::mt19937_64 rng(4);
  for (int i = 0; i < 60; ++i) {
    bigint n = bigint(rng() % 1000000 + 2);
    auto x = log2_interval(n);
    ASSERT_LE(x.lo, x.hi);
    constexpr unsigned t = 8;
    bigint p = ipow(n, 1u << t);
    EXPECT_LE(bigint(1) << static_cast<unsigned>(floor_scaled(x.lo, t)), p);
    EXPECT_GE(bigint(1) << static_cast<unsigned>(floor_scaled(x.hi, t) + 1), p);
  }
}

TEST(Log2Interval, AgreesWithFloatingPoint)
{
  for (std::uint64_t n : {3ull, 10ull, 84ull, 362880ull, 1000003ull, 1ull << 40, (1ull << 61) - 1}) {
    auto x = log2_interval(bigint(n));
    double ref = std::log2(static_cast<long double>(n));
    EXPECT_NEAR(x.mid(), ref, 1e-12 * ref);
    EXPECT_LT(hi_d(x) - lo_d(x), 1e-15);
  }
  EXPECT_EQ(log2_interval(bigint(1) << 100).lo, rational(100));
  EXPECT_EQ(log2_interval(bigint(1) << 100).hi, rational(100));
  auto big = log2_interval(factorial(1000));
  EXPECT_NEAR(big.mid(), std::lgamma(1001.0) / std::log(2.0), 1e-9);
  EXPECT_THROW(log2_interval(0), error);
}

TEST(Ln2Interval, ContainsLn2)
{
  auto const &x = ln2_interval();
  EXPECT_LE(lo_d(x), 0.6931471805599453);
  EXPECT_GE(hi_d(x), 0.6931471805599453);
  EXPECT_LT(hi_d(x) - lo_d(x), 1e-20);
}

TEST(IntervalArithmetic, Comparisons)
{
  interval a(rational(1), rational(2)), b(rational(3), rational(4));
  EXPECT_TRUE(surely_lt(a, b));
  EXPECT_FALSE(surely_lt(b, a));
  EXPECT_TRUE(surely_le(interval(rational(2)), interval(rational(2))));
  auto c = a * b;
  EXPECT_EQ(c.lo, rational(3));
  EXPECT_EQ(c.hi, rational(8));
  auto d = a / b;
  EXPECT_EQ(d.lo, rational(1, 4));
  EXPECT_EQ(d.hi, rational(2, 3));
}

TEST(EvalBounds, SubsetsNineThree)
{
  bound_instance in;
  in.id = "s93";
  in.family = instance_family::subsets;
  in.order = factorial(9);
  in.degree = 84;
  in.b_exact = 4;
  in.m = 9;
  in.k = 3;
  auto r = eval_bounds(in);
  EXPECT_TRUE(r.violations.empty());
  double ratio = std::lgamma(10.0) / std::log(84.0);
  ASSERT_TRUE(r.find("Thm1.1"));
  EXPECT_NEAR(r.find("Thm1.1")->value, 2 * ratio + 24, 1e-9);
  EXPECT_GE(r.find("Thm1.1")->value, 2 * ratio + 24);
  EXPECT_NEAR(r.find("trivial")->value, ratio, 1e-9);
  EXPECT_LE(r.find("trivial")->value, ratio);
  EXPECT_NEAR(r.find("Thm2.2(ii)")->value, 4.0, 1e-12);
  EXPECT_TRUE(r.find("Thm2.2(ii)")->holds);
}

TEST(EvalBounds, TrivialIsExact)
{
  // |G| = n^b exactly: the bound b > log|G|/log n fails
  bound_instance in;
  in.family = instance_family::diagonal;
  in.order = 8;
  in.degree = 2;
  in.b_upper = 3;
  auto r = eval_bounds(in);
  EXPECT_FALSE(r.find("trivial")->holds);
  in.b_upper = 4;
  EXPECT_TRUE(eval_bounds(in).find("trivial")->holds);
  in.b_upper.reset();
  EXPECT_THROW(eval_bounds(in), error);
}

TEST(EvalBounds, ExactRowViolationIsReported)
{
  bound_instance in;
  in.family = instance_family::partitions;
  in.order = 720;
  in.degree = 15;
  in.a = 3;
  in.b = 2;
  in.b_exact = 4;
  auto r = eval_bounds(in);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0], "f(a,2)");
}

TEST(EvalBounds, PrimitiveOnlyBoundsSkipped)
{
  bound_instance in;
  in.family = instance_family::subsets;
  in.order = factorial(8);
  in.degree = 70;
  in.m = 8;
  in.k = 4;
  in.b_upper = 5;
  in.primitive = false;
  auto r = eval_bounds(in);
  EXPECT_FALSE(r.find("Thm1.1"));
  EXPECT_TRUE(r.find("Thm2.1"));
}

TEST(Lemma24, Examples)
{
  for (auto [m, k] : {std::pair<std::size_t, std::size_t>{10, 2}, {100, 10}, {6, 3}, {1000, 31}, {12, 3}})
    EXPECT_TRUE(lemma24_interval(m, k).holds) << m << "," << k;
  auto r = lemma24_interval(100, 10);
  double actual = std::lgamma(101.0) / std::log(std::exp(std::lgamma(101.0) - std::lgamma(11.0) - std::lgamma(91.0)));
  EXPECT_NEAR(r.actual.mid(), actual, 1e-9);
}

TEST(RatioAsymptotic, MatchesLgamma)
{
  for (std::size_t k : {2u, 3u, 4u}) {
    std::size_t m = 10000;
    auto row = ratio_asymptotic(k, {m})[0];
    double lnC = std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
    double ref = row.b * lnC / std::lgamma(m + 1.0);
    EXPECT_NEAR(row.ratio.mid(), ref, 1e-9);
    EXPECT_NEAR(row.deviation, std::abs(ref - 2.0 * k / (k + 1)), 1e-9);
  }
  EXPECT_THROW(ratio_asymptotic(4, {10}), error);
}

TEST(Symplectic, Orders)
{
  EXPECT_EQ(sp_order(2, 5), 120);
  EXPECT_EQ(sp_order(4, 3), 51840);
  EXPECT_EQ(sp_order(6, 2), 1451520);
  EXPECT_TRUE(is_prime_power(49));
  EXPECT_FALSE(is_prime_power(12));
  auto scan = sp_threshold_scan(2, 64);
  ASSERT_TRUE(scan.threshold);
  for (auto const &r : scan.rows)
    if (r.q >= *scan.threshold)
      EXPECT_TRUE(r.holds) << r.q;
}

TEST(OrbitSize, MatchesEnumeration)
{
  struct row
  {
    family fam;
    std::size_t d;
    std::uint32_t q;
  };
  for (auto [fam, d, q] : {row{family::SL, 4, 2}, row{family::SL, 3, 4}, row{family::Sp, 4, 3}, row{family::Sp, 6, 2},
                           row{family::SU, 4, 4}, row{family::OmegaPlus, 6, 2}, row{family::OmegaMinus, 6, 2},
                           row{family::OmegaOdd, 5, 3}, row{family::OmegaPlus, 4, 3}}) {
    auto s = make_spec(fam, d, field::of_order(q));
    auto gens = generators(s).gens;
    for (std::size_t k = 1; 2 * k <= d; ++k)
      for (auto const &o : subspace_orbits(s, k)) {
        auto orb = enumerate_orbit(gens, o.rep, 20000);
        ASSERT_TRUE(orb.complete);
        bigint want = orbit_size(s, o);
        if (fam == family::OmegaPlus && o.kind == orbit_kind::totally_singular && 2 * k == d)
          want *= 2;
        EXPECT_EQ(bigint(orb.points.size()), want) << family_name(fam) << " d=" << d << " q=" << q << " " << o.label;
      }
  }
  EXPECT_EQ(gaussian_binomial(2, 4, 2), 35);
}

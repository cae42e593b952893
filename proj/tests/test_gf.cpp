#include <gtest/gtest.h>

#include <minbase/gf.hpp>

using namespace minbase;

TEST(Field, PrimeField)
{
  auto f = field::create(2, 1);
  EXPECT_EQ(f.q(), 2u);
  EXPECT_EQ(f.add(f.one(), f.one()), f.zero());
}

TEST(Field, F4Modulus)
{
  auto f = field::create(2, 2);
  std::vector<std::uint32_t> expected{1, 1, 1};
  EXPECT_EQ(f.modulus(), expected);
  elem x = f.x();
  elem x1 = f.add(x, f.one());
  EXPECT_EQ(f.mul(x, x1), f.one());
}

TEST(Field, F9Modulus)
{
  auto f = field::create(3, 2);
  std::vector<std::uint32_t> expected{1, 0, 1};
  EXPECT_EQ(f.modulus(), expected);
}

TEST(Field, RejectsNonPrime)
{
  try {
    field::create(4, 1);
    FAIL();
  } catch (error const &e) {
    EXPECT_EQ(e.code(), errc::not_prime);
  }
  EXPECT_THROW(field::create(2, 30), error);
}

TEST(Field, InverseOfOne)
{
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 8u, 9u, 16u, 25u, 27u})
    EXPECT_EQ(field::of_order(q).inv(field::of_order(q).one()).v, 1u);
  EXPECT_THROW(field::of_order(4).inv(elem{0}), error);
}

// Independent schoolbook multiplication: reduce the product polynomial with
// x^e = -(m_0 + ... + m_{e-1} x^{e-1}) one power at a time.
static elem oracle_mul(field const &f, elem a, elem b)
{
  std::uint32_t p = f.p(), e = f.e();
  auto ca = f.coeffs(a), cb = f.coeffs(b);
  std::vector<std::uint64_t> prod(2 * e, 0);
  for (std::uint32_t i = 0; i < e; ++i)
    for (std::uint32_t j = 0; j < e; ++j)
      prod[i + j] += std::uint64_t(ca[i]) * cb[j];
  auto const &m = f.modulus();
  for (std::uint32_t k = 2 * e - 1; k >= e; --k) {
    std::uint64_t c = prod[k] % p;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < e; ++i)
      prod[k - e + i] += (p - m[i]) % p * c;
    if (k == 0)
      break;
  }
  std::vector<std::uint32_t> r(e);
  for (std::uint32_t i = 0; i < e; ++i)
    r[i] = static_cast<std::uint32_t>(prod[i] % p);
  return f.from_coeffs(r);
}

class FieldAxioms : public ::testing::TestWithParam<std::uint32_t>
{};

TEST_P(FieldAxioms, Exhaustive)
{
  auto f = field::of_order(GetParam());
  auto all = f.elements();
  for (auto a : all)
    for (auto b : all) {
      ASSERT_EQ(f.mul(a, b), oracle_mul(f, a, b));
      ASSERT_EQ(f.sub(f.add(a, b), b), a);
    }
  for (auto a : all) {
    if (a.v) {
      EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      EXPECT_EQ(f.pow(a, f.q() - 1), f.one());
    }
    EXPECT_EQ(f.frobenius(a, f.e()), a);
    EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
  }
  if (f.q() <= 16)
    for (auto a : all)
      for (auto b : all)
        for (auto c : all) {
          ASSERT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
          ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
}

TEST_P(FieldAxioms, FrobeniusIsAutomorphismFixingPrimeField)
{
  auto f = field::of_order(GetParam());
  for (auto a : f.elements())
    for (auto b : f.elements()) {
      ASSERT_EQ(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
      ASSERT_EQ(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
    }
  for (std::uint32_t i = 0; i < f.p(); ++i)
    EXPECT_EQ(f.frobenius(elem{i}), elem{i});
}

INSTANTIATE_TEST_SUITE_P(SmallFields, FieldAxioms,
                         ::testing::Values(2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64));

TEST(Field, LargeFieldWithoutAddTable)
{
  auto f = field::create(3, 7);
  elem a{1234}, b{999};
  EXPECT_EQ(f.mul(a, b), oracle_mul(f, a, b));
  EXPECT_EQ(f.sub(f.add(a, b), b), a);
  EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
}

// Brute-force independence over the subfield: no nontrivial combination with
// subfield coefficients vanishes.
static bool independent_over_subfield(field const &f, std::vector<elem> const &lam,
                                      std::uint32_t sub_degree)
{
  std::vector<elem> sub;
  for (auto a : f.elements())
    if (f.in_subfield(a, sub_degree))
      sub.push_back(a);
  std::size_t r = lam.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i)
    total *= sub.size();
  for (std::size_t idx = 1; idx < total; ++idx) {
    std::size_t t = idx;
    elem s{};
    for (std::size_t i = 0; i < r; ++i) {
      s = f.add(s, f.mul(sub[t % sub.size()], lam[i]));
      t /= sub.size();
    }
    if (s.v == 0)
      return false;
  }
  return true;
}

TEST(SubfieldBasis, Examples)
{
  auto f4 = field::of_order(4);
  auto b = field_basis_over_subfield(f4, 2);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0], f4.one());
  EXPECT_EQ(b[1], f4.x());
  EXPECT_EQ(field_basis_over_subfield(f4, 1), std::vector<elem>{f4.one()});
  EXPECT_THROW(field_basis_over_subfield(f4, 3), error);

  for (auto [q, r] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
           {16, 2}, {16, 4}, {64, 2}, {64, 3}, {27, 3}, {25, 2}, {81, 2}, {81, 4}}) {
    auto f = field::of_order(q);
    auto lam = field_basis_over_subfield(f, r);
    EXPECT_TRUE(independent_over_subfield(f, lam, f.e() / r)) << q << " " << r;
  }
}

#include <gtest/gtest.h>

#include <minbase/classical.hpp>
#include <minbase/construct_linear.hpp>
#include <minbase/construct_subspace.hpp>
#include <minbase/construct_sym.hpp>
#include <minbase/verify.hpp>

using namespace minbase;

namespace {

std::size_t fixers_of_partitions(std::size_t m, std::vector<std::uint64_t> const &parts)
{
  perm p = perm_identity(m);
  std::size_t n = 0;
  do {
    bool fix = true;
    for (auto c : parts)
      fix = fix && partition_code::image(c, p) == c;
    n += fix;
  } while (std::next_permutation(p.begin(), p.end()));
  return n;
}

// every invertible d x d matrix with entries in the given set
std::vector<matrix> all_invertible(field const &f, std::size_t d, std::vector<elem> const &entries)
{
  std::vector<matrix> out;
  std::size_t n = entries.size(), total = 1;
  for (std::size_t i = 0; i < d * d; ++i)
    total *= n;
  for (std::size_t idx = 0; idx < total; ++idx) {
    matrix g(f, d, d);
    std::size_t t = idx;
    for (std::size_t i = 0; i < d * d; ++i, t /= n)
      g(i / d, i % d) = entries[t % n];
    if (det(g).v)
      out.push_back(g);
  }
  return out;
}

matrix kron(matrix const &a, matrix const &b)
{
  field const &f = a.fld();
  matrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
          k(i * b.rows() + r, j * b.cols() + s) = f.mul(a(i, j), b(r, s));
  return k;
}

std::size_t vector_fixers(std::vector<matrix> const &els, std::vector<vec> const &vs)
{
  std::size_t n = 0;
  for (auto const &g : els) {
    bool fix = true;
    for (auto const &v : vs)
      fix = fix && g.apply(v) == v;
    n += fix;
  }
  return n;
}

} // namespace

TEST(SubsetBase, Example93)
{
  auto c = subset_base(9, 3);
  EXPECT_EQ(c.elements.size(), 4u);
  EXPECT_EQ(c.bound_ref, "Thm2.2(ii)");
  EXPECT_TRUE(is_base(verify_subset_base(9, c.elements).status));
}

TEST(SubsetBase, StabilizerChainCertifies)
{
  for (std::size_t m = 5; m <= 10; ++m)
    for (std::size_t k = 2; 2 * k <= m; ++k) {
      auto c = subset_base(m, k);
      EXPECT_LE(c.elements.size(), c.claimed_bound);
      auto dom = k_subsets(m, k);
      std::vector<std::uint32_t> pts;
      for (auto s : c.elements)
        pts.push_back(static_cast<std::uint32_t>(std::find(dom.begin(), dom.end(), s) - dom.begin()));
      auto g = induce_on_subsets(symmetric_group(m), k);
      EXPECT_EQ(verify_generic(g, factorial(m), pts).status, cert_status::group_base) << m << "," << k;
    }
}

TEST(SubsetBase, SizesAndDeterminism)
{
  for (std::size_t m = 5; m <= 40; ++m)
    for (std::size_t k = 2; 2 * k <= m; ++k) {
      auto c = subset_base(m, k, 3);
      std::size_t bound = k * k <= m ? subset_exact_value(m, k) : subset_digit_bound(m, k);
      EXPECT_LE(c.elements.size(), bound);
      EXPECT_EQ(c.elements, subset_base(m, k, 3).elements);
      for (auto s : c.elements)
        EXPECT_EQ(std::popcount(s), static_cast<int>(k));
    }
  EXPECT_THROW(subset_base(5, 3), error);
}

TEST(PartitionBase, CertifiedBySymmetricGroup)
{
  for (std::size_t a : {2u, 3u, 4u})
    for (std::size_t b : {2u, 3u, 4u}) {
      auto c = partition_base(a, b);
      // f(3,2) = 4 exceeds the quoted bound; see ThreeMatchingsNeverSuffice
      if (a != 3 || b != 2)
        EXPECT_LE(c.elements.size(), c.claimed_bound);
      bigint kernel = a == 2 && b == 2 ? 4 : 1;
      if (a * b <= 8)
        EXPECT_EQ(fixers_of_partitions(a * b, c.elements), kernel) << a << "," << b;
      else
        EXPECT_EQ(partition_stabilizer_order(a, b, c.elements), kernel) << a << "," << b;
    }
}

TEST(PartitionBase, ThreeMatchingsNeverSuffice)
{
  // f(3,2) = 4: no three perfect matchings of six points form a base
  auto all = partitions(3, 2);
  ASSERT_EQ(all.size(), 15u);
  std::size_t bases = 0;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      for (std::size_t k = j + 1; k < all.size(); ++k)
        bases += fixers_of_partitions(6, {all[i], all[j], all[k]}) == 1;
  EXPECT_EQ(bases, 0u);
  EXPECT_EQ(partition_base(3, 2).elements.size(), 4u);
}

TEST(SubspaceBase, CrossEngine)
{
  struct row
  {
    family fam;
    std::size_t d;
    std::uint32_t q;
  };
  for (auto [fam, d, q] : {row{family::SL, 4, 2}, row{family::SL, 3, 3}, row{family::Sp, 4, 3},
                           row{family::SU, 3, 4}, row{family::OmegaMinus, 4, 3}, row{family::OmegaOdd, 5, 3}}) {
    auto s = make_spec(fam, d, field::of_order(q));
    auto gens = generators(s).gens;
    for (std::size_t k = 1; 2 * k <= d; ++k)
      for (auto const &o : subspace_orbits(s, k)) {
        subspace_candidate c;
        try {
          c = subspace_base(s, o);
        } catch (error const &e) {
          EXPECT_EQ(e.code(), errc::incompatible_parameters);
          continue;
        }
        EXPECT_LE(c.elements.size(), c.claimed_bound);
        EXPECT_TRUE(is_base(verify_subspace_base(s, c.elements).status));
        auto orb = enumerate_orbit(gens, o.rep, 10000);
        ASSERT_TRUE(orb.complete);
        auto g = induced_action(gens, orb);
        std::vector<std::uint32_t> pts;
        for (auto const &U : c.elements)
          pts.push_back(orb.index.at(U));
        EXPECT_EQ(verify_generic(g, induced_order(g, action_order(s)), pts).status, cert_status::group_base)
            << family_name(fam) << " d=" << d << " q=" << q << " " << o.label;
      }
  }
}

TEST(PairsBase, FlagsAndComplements)
{
  field f = field::of_order(2);
  auto els = detail::enumerate_group(make_spec(family::SL, 3, f));
  for (bool flags : {true, false}) {
    auto c = pairs_base(3, 1, f, flags);
    std::vector<subspace> subs;
    for (auto const &p : c.elements) {
      EXPECT_EQ(p.first.dim(), 1u);
      EXPECT_EQ(p.second.dim(), 2u);
      if (flags)
        EXPECT_TRUE(p.second.sum(p.first) == p.second);
      else
        EXPECT_EQ(p.second.sum(p.first).dim(), 3u);
      subs.push_back(p.first);
      subs.push_back(p.second);
    }
    std::size_t fix = 0;
    for (auto const &g : els) {
      bool ok = true;
      for (auto const &U : subs)
        ok = ok && U.image_under(g) == U;
      fix += ok;
    }
    EXPECT_EQ(fix, 1u);
  }
  for (bool flags : {true, false}) {
    field f3 = field::of_order(3);
    auto c = pairs_base(5, 2, f3, flags);
    std::vector<subspace> subs;
    for (auto const &p : c.elements) {
      subs.push_back(p.first);
      subs.push_back(p.second);
    }
    EXPECT_LE(c.elements.size(), c.claimed_bound);
    EXPECT_TRUE(is_base(verify_subspace_base(make_spec(family::SL, 5, f3), subs).status));
  }
}

TEST(VectorBase, Subfield)
{
  for (auto [d, q, r] : {std::tuple{2u, 4u, 2u}, {3u, 4u, 2u}, {2u, 9u, 2u}, {3u, 8u, 3u}}) {
    field f = field::of_order(q);
    auto c = subfield_base(d, f, r);
    auto sub = subfield_elements(f, r);
    auto gl = all_invertible(f, d, sub);
    EXPECT_EQ(vector_fixers(gl, c.elements), 1u) << d << " " << q;
    EXPECT_EQ(verify_subfield_base(d, f, r, c.elements).status, cert_status::group_base);
    auto fewer = c.elements;
    fewer.pop_back();
    auto bad = verify_subfield_base(d, f, r, fewer);
    ASSERT_EQ(bad.status, cert_status::not_a_base);
    auto const &w = std::get<matrix>(bad.witness);
    EXPECT_TRUE(det(w).v);
    EXPECT_FALSE(w == matrix::identity(f, d));
    for (auto const &v : fewer)
      EXPECT_TRUE(w.apply(v) == v);
    EXPECT_GT(vector_fixers(gl, fewer), 1u);
  }
}

TEST(VectorBase, Tensor)
{
  field f = field::of_order(2);
  auto h1 = detail::enumerate_group(make_spec(family::GL, 2, f, false));
  auto h2 = detail::enumerate_group(make_spec(family::GL, 3, f, false));
  std::vector<vec> strong;
  for (std::size_t i = 0; i < 3; ++i)
    strong.push_back(unit_vector(f, 3, i));
  auto t = tensor_base(strong, 2, f);
  std::vector<matrix> prod;
  for (auto const &a : h1)
    for (auto const &b : h2)
      prod.push_back(kron(a, b));
  EXPECT_EQ(vector_fixers(prod, t.base.elements), 1u);
  EXPECT_EQ(verify_tensor_base(2, 3, h2, t.base.elements).status, cert_status::group_base);
  auto fewer = t.base.elements;
  fewer.erase(fewer.begin());
  EXPECT_EQ(is_base(verify_tensor_base(2, 3, h2, fewer).status), vector_fixers(prod, fewer) == 1);
  EXPECT_EQ(tensor_base(strong, 1, f).base.elements.size(), 3u);
  EXPECT_THROW(tensor_base(strong, 4, f), error);
}

TEST(VectorBase, Symplectic)
{
  field f = field::of_order(3);
  auto c = symplectic_vector_base(4, f);
  EXPECT_EQ(c.elements.size(), 4u);
  EXPECT_EQ(c.bound_ref, "Prop5.4(i)");
  EXPECT_THROW(symplectic_vector_base(3, f), error);
}

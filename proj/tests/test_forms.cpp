#include <gtest/gtest.h>

#include <random>

#include <minbase/forms.hpp>

using namespace minbase;

static vec unit_vec(std::size_t d, std::size_t i)
{
  vec v(d);
  v[i] = elem{1};
  return v;
}

static std::vector<vec> all_vectors(field const &f, std::size_t d)
{
  std::vector<vec> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i)
    total *= f.q();
  for (std::size_t idx = 0; idx < total; ++idx) {
    vec v(d);
    std::size_t t = idx;
    for (std::size_t i = 0; i < d; ++i) {
      v[i] = elem{static_cast<std::uint32_t>(t % f.q())};
      t /= f.q();
    }
    out.push_back(v);
  }
  return out;
}

static bool has_root(field const &f, elem alpha)
{
  for (auto t : f.elements())
    if (f.add(f.add(f.mul(t, t), t), alpha).v == 0)
      return true;
  return false;
}

TEST(Alpha, RootlessAndLeast)
{
  EXPECT_EQ(find_anisotropic_alpha(field::of_order(2)).v, 1u);
  EXPECT_EQ(find_anisotropic_alpha(field::of_order(4)), field::of_order(4).x());
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u}) {
    auto f = field::of_order(q);
    auto a = find_anisotropic_alpha(f);
    EXPECT_FALSE(has_root(f, a));
    for (std::uint32_t b = 0; b < a.v; ++b)
      EXPECT_TRUE(has_root(f, elem{b}));
  }
}

TEST(StandardForm, Examples)
{
  auto f2 = field::of_order(2);
  auto f3 = field::of_order(3);
  auto sp = standard_form(form_kind::symplectic, 2, f3);
  EXPECT_EQ(sp.gram, matrix::from_ints(f3, {{0, 1}, {2, 0}}));
  EXPECT_EQ(evaluate(sp, unit_vec(2, 0), unit_vec(2, 1)).v, 1u);
  EXPECT_EQ(evaluate(sp, unit_vec(2, 0), unit_vec(2, 0)).v, 0u);

  auto qp = standard_form(form_kind::quadratic, 2, f2, form_sign::plus);
  EXPECT_EQ(q_eval(qp, unit_vec(2, 0)).v, 0u);
  EXPECT_EQ(q_eval(qp, {elem{1}, elem{1}}).v, 1u);
  EXPECT_EQ(witt_decompose(qp).witt_index, 1u);

  auto qm = standard_form(form_kind::quadratic, 2, f2, form_sign::minus);
  for (auto const &v : all_vectors(f2, 2))
    if (v[0].v || v[1].v)
      EXPECT_NE(q_eval(qm, v).v, 0u);

  EXPECT_THROW(standard_form(form_kind::symplectic, 3, f2), error);
  EXPECT_THROW(standard_form(form_kind::unitary, 2, f3), error);
  EXPECT_THROW(standard_form(form_kind::quadratic, 3, f2, form_sign::odd), error);
  EXPECT_THROW(q_eval(sp, unit_vec(2, 0)), error);
  EXPECT_EQ(evaluate(sp, vec(2), unit_vec(2, 1)).v, 0u);
}

struct form_case
{
  form_kind kind;
  form_sign sign;
  std::size_t d;
  std::uint32_t q;
};

static std::vector<form_case> form_cases()
{
  std::vector<form_case> out;
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    for (std::size_t d = 2; d <= 10; d += 2) {
      out.push_back({form_kind::symplectic, form_sign::plus, d, q});
      out.push_back({form_kind::quadratic, form_sign::plus, d, q});
      out.push_back({form_kind::quadratic, form_sign::minus, d, q});
    }
    if (q % 2)
      for (std::size_t d = 1; d <= 9; d += 2)
        out.push_back({form_kind::quadratic, form_sign::odd, d, q});
    if (q == 4)
      for (std::size_t d = 1; d <= 8; ++d)
        out.push_back({form_kind::unitary, form_sign::plus, d, q});
  }
  return out;
}

TEST(Witt, DecompositionInvariants)
{
  for (auto c : form_cases()) {
    auto f = field::of_order(c.q);
    auto F = standard_form(c.kind, c.d, f, c.sign);
    auto wd = witt_decompose(F);
    EXPECT_EQ(2 * wd.witt_index + wd.witt_defect, c.d);
    std::size_t expected_defect = c.kind == form_kind::quadratic
                                      ? (c.sign == form_sign::plus ? 0 : c.sign == form_sign::minus ? 2 : 1)
                                      : c.kind == form_kind::unitary ? c.d % 2 : 0;
    EXPECT_EQ(wd.witt_defect, expected_defect) << c.q << " " << c.d;
    auto const &hp = wd.hyperbolic_pairs;
    for (std::size_t i = 0; i < hp.size(); ++i) {
      EXPECT_TRUE(is_singular(F, hp[i].first));
      EXPECT_TRUE(is_singular(F, hp[i].second));
      for (std::size_t j = 0; j < hp.size(); ++j) {
        EXPECT_EQ(evaluate(F, hp[i].first, hp[j].second).v, i == j ? 1u : 0u);
        if (i != j) {
          EXPECT_EQ(evaluate(F, hp[i].first, hp[j].first).v, 0u);
          EXPECT_EQ(evaluate(F, hp[i].second, hp[j].second).v, 0u);
        }
      }
    }
    if (!wd.anisotropic_basis.empty()) {
      auto A = subspace::span(f, c.d, wd.anisotropic_basis);
      std::size_t n = A.dim(), total = 1;
      for (std::size_t i = 0; i < n; ++i)
        total *= f.q();
      auto basis = A.vectors();
      for (std::size_t idx = 1; idx < total; ++idx) {
        vec v(c.d);
        std::size_t t = idx;
        for (std::size_t i = 0; i < n; ++i) {
          elem a{static_cast<std::uint32_t>(t % f.q())};
          t /= f.q();
          for (std::size_t j = 0; j < c.d; ++j)
            v[j] = f.add(v[j], f.mul(a, basis[i][j]));
        }
        EXPECT_FALSE(is_singular(F, v));
      }
    }
  }
}

TEST(Witt, PolarizationConsistency)
{
  for (auto c : form_cases()) {
    if (c.kind != form_kind::quadratic)
      continue;
    auto f = field::of_order(c.q);
    long double total = 1;
    for (std::size_t i = 0; i < c.d; ++i)
      total *= c.q;
    if (total > 4096)
      continue;
    auto F = standard_form(c.kind, c.d, f, c.sign);
    auto vs = all_vectors(f, c.d);
    for (auto const &u : vs)
      for (std::size_t j = 0; j < c.d; ++j) {
        auto v = unit_vec(c.d, j);
        vec s(c.d);
        for (std::size_t i = 0; i < c.d; ++i)
          s[i] = f.add(u[i], v[i]);
        EXPECT_EQ(evaluate(F, u, v), f.sub(f.sub(q_eval(F, s), q_eval(F, u)), q_eval(F, v)));
      }
    for (auto const &v : vs)
      for (auto l : f.elements()) {
        vec lv(c.d);
        for (std::size_t i = 0; i < c.d; ++i)
          lv[i] = f.mul(l, v[i]);
        EXPECT_EQ(q_eval(F, lv), f.mul(f.mul(l, l), q_eval(F, v)));
      }
  }
}

TEST(Witt, WithinSubspace)
{
  auto f = field::of_order(3);
  auto F = standard_form(form_kind::quadratic, 3, f, form_sign::odd);
  auto wd = witt_decompose(F);
  EXPECT_EQ(wd.witt_index, 1u);
  EXPECT_EQ(wd.witt_defect, 1u);
  auto f2 = field::of_order(2);
  auto G = standard_form(form_kind::quadratic, 4, f2, form_sign::minus);
  auto wg = witt_decompose(G);
  EXPECT_EQ(wg.witt_index, 1u);
  EXPECT_EQ(wg.witt_defect, 2u);

  auto S = standard_form(form_kind::symplectic, 4, f);
  auto iso = subspace::span(f, 4, {unit_vec(4, 0), unit_vec(4, 2)});
  EXPECT_THROW(witt_decompose(S, iso), error);
  auto plane = subspace::span(f, 4, {unit_vec(4, 2), unit_vec(4, 3)});
  EXPECT_EQ(witt_decompose(S, plane).witt_index, 1u);
}

TEST(Preserves, Examples)
{
  auto f = field::of_order(3);
  auto sp = standard_form(form_kind::symplectic, 2, f);
  EXPECT_TRUE(preserves(sp, matrix::identity(f, 2)));
  EXPECT_FALSE(preserves(sp, matrix::from_ints(f, {{0, 1}, {1, 0}})));
  auto f4 = field::of_order(4);
  auto u = standard_form(form_kind::unitary, 2, f4);
  EXPECT_TRUE(preserves(u, matrix::identity(f4, 2)));
  // diag(x, 1): x * sigma(x) = x^3 = 1 in F_4
  matrix g = matrix::identity(f4, 2);
  g(0, 0) = f4.x();
  EXPECT_TRUE(preserves(u, g));
  auto qp = standard_form(form_kind::quadratic, 2, field::of_order(2), form_sign::plus);
  EXPECT_TRUE(preserves(qp, matrix::from_ints(field::of_order(2), {{0, 1}, {1, 0}})));
  EXPECT_FALSE(preserves(qp, matrix::from_ints(field::of_order(2), {{1, 1}, {0, 1}})));
}

TEST(Perp, DimensionAndExamples)
{
  auto f = field::of_order(3);
  auto sp2 = standard_form(form_kind::symplectic, 2, f);
  auto e1 = subspace::span(f, 2, {unit_vec(2, 0)});
  EXPECT_EQ(perp(sp2, e1), e1);
  EXPECT_EQ(perp(sp2, subspace::whole(f, 2)).dim(), 0u);
  std::mt19937_64 rng(7);
  for (auto c : form_cases()) {
    if (c.d > 6)
      continue;
    auto fq = field::of_order(c.q);
    auto F = standard_form(c.kind, c.d, fq, c.sign);
    if (c.kind == form_kind::quadratic && c.q % 2 == 0 && c.d % 2)
      continue;
    for (int t = 0; t < 200; ++t) {
      matrix m(fq, 1 + rng() % c.d, c.d);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < c.d; ++j)
          m(i, j) = elem{static_cast<std::uint32_t>(rng() % c.q)};
      auto U = subspace::span(m);
      auto P = perp(F, U);
      EXPECT_EQ(U.dim() + P.dim(), c.d);
      for (auto const &p : P.vectors())
        for (auto const &v : U.vectors())
          EXPECT_EQ(evaluate(F, p, v).v, 0u);
    }
  }
}

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "lbxm/catalog.hpp"
#include "lbxm/identities.hpp"
#include "oracle.hpp"

using namespace lbxm;
using Q = Rational;

namespace {

template <Field F>
CrossedModule<F> xmod(const std::string& id) {
  return std::get<CrossedModule<F>>(catalog_load<F>(id).payload);
}

template <Field F>
LeibnizAlgebra<F> algebra(const std::string& id) {
  return std::get<LeibnizAlgebra<F>>(catalog_load<F>(id).payload);
}

std::vector<std::string> ids_of_kind(const std::string& kind) {
  std::vector<std::string> out;
  for (const auto& id : catalog_ids())
    if (catalog_detail::build<Q>(id).kind() == kind) out.push_back(id);
  return out;
}

template <Field F, class Elem>
Subspace<F> span_of(const BiderAlgebra<F, Elem>& b, const std::vector<Elem>& elems) {
  std::vector<Vector<F>> vs;
  for (const auto& e : elems) vs.push_back(e.flatten());
  return Subspace<F>::span(b.solutions.ambient_dim(), vs);
}

// Structure constants of as_algebra agree with the bracket recomputed on the basis.
template <Field F, class Elem, class Bracket>
void expect_closed(const BiderAlgebra<F, Elem>& b, Bracket bracket, const std::string& what) {
  EXPECT_TRUE(validate_leibniz(b.as_algebra).ok()) << what;
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) {
      auto c = b.coordinates(bracket(b.basis[i], b.basis[j]));
      ASSERT_TRUE(c.has_value()) << what;
      EXPECT_EQ(*c, b.as_algebra.bracket_basis(i, j)) << what;
    }
}

std::uint64_t bits(const BiderPair<F2>& p) {
  auto d = oracle::raw(p.d);
  return oracle::mat_to_bits(d) | (oracle::mat_to_bits(oracle::raw(p.D)) << (p.d.rows() * p.d.cols()));
}

std::uint64_t bits(const XModBiderQuad<F2>& q) {
  const std::size_t wn = q.sigma1.rows() * q.sigma1.rows(), wq = q.sigma2.rows() * q.sigma2.rows();
  return oracle::mat_to_bits(oracle::raw(q.sigma1)) | (oracle::mat_to_bits(oracle::raw(q.theta1)) << wn) |
         (oracle::mat_to_bits(oracle::raw(q.sigma2)) << (2 * wn)) |
         (oracle::mat_to_bits(oracle::raw(q.theta2)) << (2 * wn + wq));
}

template <class Elem>
std::set<std::uint64_t> library_set(const std::vector<Elem>& basis) {
  std::vector<std::uint64_t> gens;
  for (const auto& e : basis) gens.push_back(bits(e));
  return oracle::f2_span(gens);
}

// Ideal crossed modules of every two-dimensional F2 algebra with a
// one-dimensional ideal, plus (A1, q, 0) with the zero action.
std::vector<CrossedModule<F2>> small_f2_xmods() {
  std::vector<CrossedModule<F2>> out;
  for (const auto& t : oracle::all_leibniz_dim2()) {
    auto q = oracle::to_algebra<2>(t);
    for (auto v : {Vector<F2>{1, 0}, Vector<F2>{0, 1}, Vector<F2>{1, 1}}) {
      auto s = Subspace<F2>::span(2, {v});
      if (is_ideal(q, s)) out.push_back(ideal_xmod(q, s));
    }
    ActionData<F2> zero(q, LeibnizAlgebra<F2>(1), Bilinear<F2>(2, 1, 1), Bilinear<F2>(1, 2, 1));
    out.emplace_back(std::move(zero), Matrix<F2>(2, 1));
  }
  return out;
}

template <Field F>
bool is_homomorphism(const LeibnizAlgebra<F>& a, const LeibnizAlgebra<F>& b, const Matrix<F>& f) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (f.apply(a.bracket_basis(i, j)) != b.bracket(f.column(i), f.column(j))) return false;
  return true;
}

}  // namespace

TEST(BiderAlgebra, AbelianHasEveryPair) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto b = bider_algebra(LeibnizAlgebra<Q>(n));
    EXPECT_EQ(b.dim(), 2 * n * n);
  }
}

TEST(BiderAlgebra, L2MatchesHandSolution) {
  auto L2 = catalog_detail::L2<Q>();
  auto b = bider_algebra(L2);
  ASSERT_EQ(b.dim(), 3u);
  // d(e1) = a e1 + b e2, d(e2) = 2a e2, D(e1) = a e1 + β e2, D(e2) = 0
  std::vector<BiderPair<Q>> hand{
      {Matrix<Q>{{1, 0}, {0, 2}}, Matrix<Q>{{1, 0}, {0, 0}}},
      {Matrix<Q>{{0, 0}, {1, 0}}, Matrix<Q>(2, 2)},
      {Matrix<Q>(2, 2), Matrix<Q>{{0, 0}, {1, 0}}},
  };
  for (const auto& h : hand) EXPECT_TRUE(is_bider(L2, h));
  EXPECT_EQ(span_of(b, hand), b.solutions);
  expect_closed(b, [](const auto& x, const auto& y) { return detail::plain_bracket(x, y); }, "L2");
}

TEST(BiderAlgebra, Sl2IsInnerWithEqualComponents) {
  auto sl2 = catalog_detail::sl2<Q>();
  auto b = bider_algebra(sl2);
  ASSERT_EQ(b.dim(), 3u);
  for (const auto& p : b.basis) EXPECT_EQ(p.d, p.D);
  std::vector<BiderPair<Q>> inner;
  for (std::size_t i = 0; i < 3; ++i) inner.push_back(inner_bider(sl2, sl2.basis_vector(i)));
  EXPECT_EQ(span_of(b, inner), b.solutions);
}

TEST(BiderAlgebra, ClosedAndLeibnizOnCatalog) {
  for (const auto& id : ids_of_kind("algebra")) {
    auto a = algebra<Q>(id);
    auto b = bider_algebra(a);
    for (const auto& p : b.basis) EXPECT_TRUE(is_bider(a, p)) << id;
    expect_closed(b, [](const auto& x, const auto& y) { return detail::plain_bracket(x, y); }, id);
  }
}

TEST(InnerBider, L2AndAbelian) {
  auto L2 = catalog_detail::L2<Q>();
  auto p = inner_bider(L2, Vector<Q>{1, 0});
  EXPECT_EQ(p.d, (Matrix<Q>{{0, 0}, {-1, 0}}));
  EXPECT_EQ(p.D, (Matrix<Q>{{0, 0}, {1, 0}}));
  auto z = inner_bider(LeibnizAlgebra<Q>(2), Vector<Q>{1, 1});
  EXPECT_TRUE(z.d.is_zero());
  EXPECT_TRUE(z.D.is_zero());
}

TEST(InnerBider, LiesInBiderOnCatalog) {
  for (const auto& id : ids_of_kind("algebra")) {
    auto a = algebra<Q>(id);
    auto b = bider_algebra(a);
    for (std::size_t i = 0; i < a.dim(); ++i)
      EXPECT_TRUE(b.coordinates(inner_bider(a, a.basis_vector(i))).has_value()) << id;
  }
}

TEST(BiderQN, IdentityZeroAndIdeal) {
  auto id = bider_qn(xmod<Q>("q-q-id-L2"));
  EXPECT_EQ(id.solutions, bider_algebra(catalog_detail::L2<Q>()).solutions);
  EXPECT_EQ(id.as_algebra, bider_algebra(catalog_detail::L2<Q>()).as_algebra);

  EXPECT_EQ(bider_qn(xmod<Q>("0-q-0-L2")).dim(), 0u);

  auto x = xmod<Q>("n-in-L2");
  auto b = bider_qn(x);
  ASSERT_EQ(b.dim(), 2u);
  // d(e1) = b e2, d(e2) = 0, D(e1) = β e2, D(e2) = 0, written in the basis e2 of n
  std::vector<BiderPair<Q>> hand{{Matrix<Q>{{1, 0}}, Matrix<Q>{{0, 0}}}, {Matrix<Q>{{0, 0}}, Matrix<Q>{{1, 0}}}};
  EXPECT_EQ(span_of(b, hand), b.solutions);
}

TEST(BiderXMod, ZeroTopAndIdentityRecoverBider) {
  for (const auto& qid : {"L2", "sl2"}) {
    auto q = algebra<Q>(qid);
    auto bq = bider_algebra(q);

    // (0, q, 0): (σ₂, θ₂) extraction is a bracket isomorphism.
    auto z = bider_xmod(zero_top_xmod(q));
    ASSERT_EQ(z.dim(), bq.dim()) << qid;
    Matrix<Q> ext(bq.dim(), z.dim());
    for (std::size_t i = 0; i < z.dim(); ++i) {
      EXPECT_EQ(z.basis[i].sigma1.rows(), 0u);
      auto c = bq.coordinates(z.basis[i].second());
      ASSERT_TRUE(c.has_value());
      for (std::size_t r = 0; r < c->size(); ++r) ext(r, i) = (*c)[r];
    }
    EXPECT_EQ(rank(ext), bq.dim()) << qid;
    EXPECT_TRUE(is_homomorphism(z.as_algebra, bq.as_algebra, ext)) << qid;

    // (q, q, id): the quadruple is ((d, D), (d, D)).
    auto d = bider_xmod(identity_xmod(q));
    ASSERT_EQ(d.dim(), bq.dim()) << qid;
    for (const auto& e : d.basis) EXPECT_EQ(e.first(), e.second()) << qid;
    std::vector<XModBiderQuad<Q>> diag;
    for (const auto& p : bq.basis) diag.push_back({p.d, p.D, p.d, p.D});
    EXPECT_EQ(span_of(d, diag), d.solutions) << qid;
  }
}

TEST(BiderXMod, IdealInL2HasDimensionThree) {
  auto x = xmod<Q>("n-in-L2");
  auto b = bider_xmod(x);
  EXPECT_EQ(b.dim(), 3u);
  for (const auto& e : b.basis) EXPECT_TRUE(is_bider_xmod(x, e));
  expect_closed(b, [](const auto& u, const auto& v) { return quad_bracket(u, v); }, "n-in-L2");
}

TEST(BiderXMod, ClosedOnCatalog) {
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto top = bider_qn(x);
    auto base = bider_xmod(x);
    for (const auto& p : top.basis) EXPECT_TRUE(is_bider_qn(x, p)) << id;
    for (const auto& e : base.basis) EXPECT_TRUE(is_bider_xmod(x, e)) << id;
    expect_closed(top, [&](const auto& u, const auto& v) { return pair_bracket(x, u, v); }, id);
    expect_closed(base, [](const auto& u, const auto& v) { return quad_bracket(u, v); }, id);
  }
}

TEST(Delta, IdentityIsDiagonalAndZeroTopIsZero) {
  auto x = xmod<Q>("q-q-id-L2");
  auto top = bider_qn(x);
  auto base = bider_xmod(x);
  auto m = delta(x, top, base);
  for (std::size_t i = 0; i < top.dim(); ++i) {
    const auto& p = top.basis[i];
    XModBiderQuad<Q> diag{p.d, p.D, p.d, p.D};
    EXPECT_EQ(base.element(m.column(i)), diag);
  }
  auto z = xmod<Q>("0-q-0-L2");
  EXPECT_TRUE(delta(z).is_zero());
}

TEST(Delta, HomomorphismOnCatalog) {
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto top = bider_qn(x);
    auto base = bider_xmod(x);
    auto m = delta(x, top, base);
    EXPECT_TRUE(is_homomorphism(top.as_algebra, base.as_algebra, m)) << id;
    EXPECT_TRUE(check_delta_components(x, top).ok()) << id;
  }
}

TEST(Actor, ValidOnCatalogWithExpectedDims) {
  const std::map<std::string, std::pair<std::size_t, std::size_t>> dims{
      {"0-q-0-L2", {0, 3}}, {"q-q-id-L2", {3, 3}}, {"n-in-L2", {2, 3}}, {"sl2-id", {3, 3}},
      {"0-q-0-sl2", {0, 3}}, {"A1-id", {2, 2}},     {"r2-id", {2, 2}},
  };
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto a = actor(x);
    auto r = validate_xmod(a.xmod);
    EXPECT_TRUE(r.ok()) << id << ": " << r.violations.size() << " violations";
    if (auto it = dims.find(id); it != dims.end()) {
      EXPECT_EQ(a.xmod.top().dim(), it->second.first) << id;
      EXPECT_EQ(a.xmod.base().dim(), it->second.second) << id;
    }
  }
  EXPECT_EQ(rank(actor(xmod<Q>("q-q-id-L2")).xmod.boundary()), 3u);
}

TEST(Actor, ValidOverPrimeFields) {
  for (const auto& id : {"n-in-L2", "sl2-id", "hemi-sl2-id"}) {
    EXPECT_TRUE(validate_xmod(actor(xmod<F2>(id)).xmod).ok()) << id;
    EXPECT_TRUE(validate_xmod(actor(xmod<F3>(id)).xmod).ok()) << id;
  }
}

TEST(Identities, HoldOnCatalog) {
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto top = bider_qn(x);
    auto base = bider_xmod(x);
    EXPECT_TRUE(check_pair_identities(x, top).ok()) << id;
    auto r = check_quad_identities(x, top, base);
    EXPECT_TRUE(r.ok()) << id << ": " << (r.ok() ? "" : r.violations.front().label);
  }
}

TEST(Identities, CollapseUnderEachCondition) {
  bool seen[3] = {false, false, false};
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto f = check_conditions(x);
    if (!f.any()) continue;
    seen[0] = seen[0] || f.con1;
    seen[1] = seen[1] || f.con2;
    seen[2] = seen[2] || f.con3;
    EXPECT_TRUE(check_theta_sigma(bider_algebra(x.base())).ok()) << id;
    EXPECT_TRUE(check_mixed_collapse(bider_qn(x), bider_xmod(x)).ok()) << id;
  }
  EXPECT_TRUE(seen[0] && seen[1] && seen[2]);
}

TEST(Identities, CollapseCanFailWithoutConditions) {
  // On A1 every pair is a biderivation; θ = id with (σ', θ') = (0, id) breaks θσ' = θθ'.
  EXPECT_FALSE(check_theta_sigma(bider_algebra(LeibnizAlgebra<Q>(1))).ok());
  EXPECT_TRUE(check_theta_sigma(bider_algebra(catalog_detail::L2<Q>())).ok());
}

TEST(Lie, R2PairsHaveEqualComponentsAndAntisymmetricBracket) {
  auto x = xmod<Q>("r2-id");
  auto b = bider_qn(x);
  ASSERT_GT(b.dim(), 0u);
  for (const auto& p : b.basis) EXPECT_EQ(p.d, p.D);
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      EXPECT_EQ(b.as_algebra.bracket_basis(i, j), vec::neg<Q>(b.as_algebra.bracket_basis(j, i)));
}

TEST(Canonical, ZeroOnAbelianInjectiveOnSl2) {
  auto a = canonical_morphism(xmod<Q>("A1-id"));
  EXPECT_TRUE(a.top_map.is_zero());
  EXPECT_TRUE(a.base_map.is_zero());
  auto s = canonical_morphism(xmod<Q>("sl2-id"));
  EXPECT_EQ(rank(s.top_map), 3u);
  EXPECT_EQ(rank(s.base_map), 3u);
}

TEST(Canonical, ValidOnCatalog) {
  for (const auto& id : ids_of_kind("xmod")) EXPECT_TRUE(validate_morphism(canonical_morphism(xmod<Q>(id))).ok()) << id;
}

TEST(InnerOuter, AbelianAndSl2) {
  auto x = xmod<Q>("A1-id");
  auto act = actor(x);
  auto inn = inner_xmod(x, act);
  EXPECT_TRUE(inn.top.is_zero());
  EXPECT_TRUE(inn.base.is_zero());
  EXPECT_EQ(outer_xmod(x, act).xmod, act.xmod);

  auto s = xmod<Q>("sl2-id");
  auto sa = actor(s);
  auto sinn = inner_xmod(s, sa);
  EXPECT_EQ(sinn.xmod.top().dim(), 3u);
  EXPECT_EQ(sinn.xmod.base().dim(), 3u);
  auto out = outer_xmod(s, sa);
  EXPECT_EQ(out.xmod.top().dim(), 0u);
  EXPECT_EQ(out.xmod.base().dim(), 0u);
}

TEST(InnerOuter, InnerIsAnIdealOnCatalog) {
  for (const auto& id : ids_of_kind("xmod")) {
    auto x = xmod<Q>(id);
    auto act = actor(x);
    auto inn = inner_xmod(x, act);
    EXPECT_TRUE(check_xmod_ideal(act.xmod, inn.top, inn.base).ok()) << id;
    auto out = outer_xmod(x, act);
    EXPECT_TRUE(validate_xmod(out.xmod).ok()) << id;
    EXPECT_EQ(out.xmod.top().dim() + inn.top.dim(), act.xmod.top().dim()) << id;
  }
}

TEST(F2Oracle, BiderOfAllTwoDimensionalAlgebras) {
  for (const auto& t : oracle::all_leibniz_dim2()) {
    auto b = bider_algebra(oracle::to_algebra<2>(t));
    EXPECT_EQ(library_set(b.basis), oracle::enumerate_bider(t));
  }
}

TEST(F2Oracle, BiderOfRandomAlgebras) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 10; ++i) {
    auto t = oracle::random_leibniz(rng, 2 + i % 2);
    auto b = bider_algebra(oracle::to_algebra<2>(t));
    EXPECT_EQ(library_set(b.basis), oracle::enumerate_bider(t)) << "sample " << i;
  }
}

TEST(F2Oracle, CrossedModuleSolutionSpaces) {
  auto xs = small_f2_xmods();
  ASSERT_GE(xs.size(), 5u);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    ASSERT_TRUE(validate_xmod(x).ok()) << i;
    auto r = oracle::raw(x);
    EXPECT_EQ(library_set(bider_qn(x).basis), oracle::enumerate_bider_qn(r.q_br, r.left, r.right)) << i;
    EXPECT_EQ(library_set(bider_xmod(x).basis), oracle::enumerate_bider_xmod(r)) << i;
  }
}

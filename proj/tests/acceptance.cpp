// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "lbxm/cli.hpp"
#include "lbxm/sequence.hpp"
#include "oracle.hpp"

using namespace lbxm;
using Q = Rational;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

template <Field F>
CrossedModule<F> xmod(const std::string& id) {
  return std::get<CrossedModule<F>>(catalog_load<F>(id).payload);
}

template <Field F>
std::vector<std::pair<std::string, CrossedModule<F>>> catalog_xmods() {
  std::vector<std::pair<std::string, CrossedModule<F>>> out;
  for (const auto& id : catalog_ids()) {
    auto e = catalog_load<F>(id);
    if (auto* x = std::get_if<CrossedModule<F>>(&e.payload)) out.emplace_back(id, *x);
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

template <Field F>
std::size_t count_actor_failures(std::string& first) {
  std::size_t bad = 0;
  for (const auto& [id, x] : catalog_xmods<F>()) {
    auto r = validate_xmod(actor(x).xmod);
    if (!r.ok() && bad++ == 0) first = id + " over " + F::tag() + ": " + r.violations.front().label;
  }
  return bad;
}

Outcome criterion1() {
  Outcome o;
  std::string first;
  std::size_t bad = count_actor_failures<Q>(first) + count_actor_failures<F2>(first) + count_actor_failures<F3>(first);
  o.require(bad == 0, first);
  o.detail = o.pass ? std::to_string(catalog_xmods<Q>().size()) + " crossed modules over Q, F2 and F3" : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto L2 = catalog_detail::L2<Q>();
  auto bl = bider_algebra(L2);
  auto z = actor(zero_top_xmod(L2));
  o.require(z.xmod.top().dim() == 0 && z.xmod.base().dim() == 3, "actor(0,L2,0) dims");
  // (σ₁, θ₁, σ₂, θ₂) ↦ (σ₂, θ₂)
  Matrix<Q> ext(bl.dim(), z.base.dim());
  for (std::size_t i = 0; i < z.base.dim(); ++i) {
    auto c = bl.coordinates(z.base.basis[i].second());
    o.require(c.has_value(), "extracted pair is not a biderivation of L2");
    if (!c) return o;
    for (std::size_t r = 0; r < c->size(); ++r) ext(r, i) = (*c)[r];
  }
  o.require(ext.rows() == ext.cols() && rank(ext) == bl.dim(), "extraction is not bijective");
  o.require(is_homomorphism(z.xmod.base(), bl.as_algebra, ext), "extraction does not preserve brackets");

  auto id = actor(identity_xmod(L2));
  o.require(id.xmod.top().dim() == 3 && id.xmod.base().dim() == 3, "actor(L2,L2,id) dims");
  o.require(rank(id.xmod.boundary()) == 3, "boundary of actor(L2,L2,id) is not bijective");
  if (o.pass) o.detail = "dims (0,3) and (3,3), extraction and boundary bijective";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto x = xmod<Q>("n-in-L2");
  const auto& L2 = x.base();
  auto bl = bider_algebra(L2);
  auto qn = bider_qn(x);
  auto xm = bider_xmod(x);
  o.require(qn.dim() == 2, "bider_qn dim " + std::to_string(qn.dim()));
  o.require(xm.dim() == 3, "bider_xmod dim " + std::to_string(xm.dim()));

  // Unknown layout of a pair of 2x2 maps: d row-major (0..3), then D (4..7).
  // X: biderivations of L2 with image in n = span{e2}, i.e. row 0 of d and D vanishes.
  auto X = intersection(bl.solutions, catalog_detail::coordinate_span<Q>(8, {2, 3, 6, 7}));
  std::vector<Vector<Q>> from_qn;
  for (const auto& p : qn.basis) {
    BiderPair<Q> lifted{x.boundary() * p.d, x.boundary() * p.D};
    o.require(X.contains(lifted.flatten()), "iota composed with a Bider(q,n) element leaves X");
    from_qn.push_back(lifted.flatten());
  }
  o.require(Subspace<Q>::span(8, from_qn) == X, "Bider(q,n) does not fill X");

  // Y: biderivations of L2 mapping n into n (entries d(0,1), D(0,1) vanish) whose
  // restriction to n is a biderivation of n.
  auto Y = intersection(bl.solutions, catalog_detail::coordinate_span<Q>(8, {0, 2, 3, 4, 6, 7}));
  const auto& N = x.top();
  for (const auto& v : Y.vectors()) {
    auto p = BiderPair<Q>::from_flat(2, 2, v);
    Matrix<Q> rd{{p.d(1, 1)}}, rD{{p.D(1, 1)}};
    o.require(is_bider(N, BiderPair<Q>{rd, rD}), "restriction to n is not in Bider(n)");
  }
  std::vector<Vector<Q>> from_xm;
  for (const auto& e : xm.basis) {
    o.require(Y.contains(e.second().flatten()), "(sigma2, theta2) of a Bider(n,q,mu) element leaves Y");
    o.require(x.boundary() * e.sigma1 == e.sigma2 * x.boundary(), "sigma1 is not the restriction of sigma2");
    from_xm.push_back(e.second().flatten());
  }
  o.require(rank(Matrix<Q>::from_columns(8, from_xm)) == xm.dim(), "(sigma2, theta2) extraction is not injective");
  o.require(Subspace<Q>::span(8, from_xm) == Y, "Bider(n,q,mu) does not fill Y");
  if (o.pass) o.detail = "dims 2 and 3; X and Y match by containment both ways";
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::size_t cases[3] = {0, 0, 0};
  for (const auto& [id, x] : catalog_xmods<Q>()) {
    auto top = bider_qn(x);
    auto base = bider_xmod(x);
    auto r33 = check_delta_components(x, top);
    auto r34 = check_pair_identities(x, top);
    auto r37 = check_quad_identities(x, top, base);
    o.require(r33.ok(), id + ": " + (r33.ok() ? "" : r33.violations.front().label));
    o.require(r34.ok(), id + ": " + (r34.ok() ? "" : r34.violations.front().label));
    o.require(r37.ok(), id + ": " + (r37.ok() ? "" : r37.violations.front().label));

    auto f = check_conditions(x);
    const bool flag[3] = {f.con1, f.con2, f.con3};
    if (!f.any()) continue;
    auto ts = check_theta_sigma(bider_algebra(x.base()));
    auto mc = check_mixed_collapse(top, base);
    for (int k = 0; k < 3; ++k) {
      if (!flag[k]) continue;
      ++cases[k];
      o.require(ts.ok(), id + " under CON" + std::to_string(k + 1) + ": theta.sigma'=theta.theta'");
      o.require(mc.ok(), id + " under CON" + std::to_string(k + 1) + ": " + (mc.ok() ? "" : mc.violations.front().label));
    }
  }
  for (int k = 0; k < 3; ++k) o.require(cases[k] > 0, "no catalog crossed module satisfies CON" + std::to_string(k + 1));
  if (o.pass)
    o.detail = "collapse checked on " + std::to_string(cases[0]) + "/" + std::to_string(cases[1]) + "/" +
               std::to_string(cases[2]) + " fixtures under CON1/CON2/CON3";
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto x = xmod<Q>("sl2-id");
  o.require(check_conditions(x).con1, "CON1 does not hold");
  auto k = kernel(canonical_morphism(x));
  auto z = center(x);
  o.require(k.top == z.top && k.base == z.base, "kernel and center differ");
  o.require(z.top.is_zero() && z.base.is_zero(), "center is not zero");
  return o;
}

Outcome criterion6() {
  Outcome o;
  auto x = xmod<Q>("n-in-L2");
  auto z = center(x);
  auto e2 = catalog_detail::coordinate_span<Q>(2, {1});
  auto ann = annihilator(x.base());
  auto top_in_q = Subspace<Q>::column_space(x.boundary() * z.top.inclusion());
  o.require(top_in_q == intersection(e2, ann), "top is not span{e2} meet Ann(L2)");
  o.require(z.base == ann, "base is not Ann(L2)");
  o.require(top_in_q == e2 && z.base == e2, "center is not (span{e2}, span{e2})");
  o.require(z.xmod.boundary() == Matrix<Q>::identity(1), "boundary is not the inclusion");
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto d = std::get<XModActionData<Q>>(catalog_load<Q>("sl2-selfaction").payload);
  auto s = semidirect_xmod(d);
  o.require(s.xmod.top().dim() == 6 && s.xmod.base().dim() == 6, "dims");
  o.require(validate_xmod(s.xmod).ok(), "semidirect product is not a crossed module");
  o.require(validate_morphism(s.inclusion).ok() && validate_morphism(s.projection).ok() &&
                validate_morphism(s.section).ok(),
            "structure maps are not morphisms");
  o.require(s.projection.top_map * s.section.top_map == Matrix<Q>::identity(3) &&
                s.projection.base_map * s.section.base_map == Matrix<Q>::identity(3),
            "section is not a right inverse");
  o.require(Subspace<Q>::column_space(s.inclusion.top_map) == nullspace(s.projection.top_map) &&
                Subspace<Q>::column_space(s.inclusion.base_map) == nullspace(s.projection.base_map),
            "not exact");
  return o;
}

Outcome criterion8() {
  Outcome o;
  auto d = std::get<XModActionData<Q>>(catalog_load<Q>("sl2-selfaction").payload);
  auto act = actor(d.target_xmod);
  auto f = morphism_from_action(d, act);
  auto back = action_from_morphism(d.target_xmod, act, f);
  o.require(back == d, "action -> morphism -> action differs");
  for (const auto& id : {"sl2-id", "0-q-0-sl2"}) {
    auto y = xmod<Q>(id);
    auto ay = actor(y);
    auto c = canonical_morphism(y, ay);
    auto again = morphism_from_action(action_from_morphism(y, ay, c), ay);
    o.require(again == c, std::string("morphism -> action -> morphism differs on ") + id);
  }
  auto L2 = xmod<Q>("q-q-id-L2");
  o.require(!check_conditions(L2).any(), "a CON flag holds on (L2, L2, id)");
  bool refused = false;
  try {
    action_from_morphism(L2, canonical_morphism(L2));
  } catch (const PreconditionFailed&) {
    refused = true;
  }
  o.require(refused, "no refusal on (L2, L2, id)");
  return o;
}

std::uint64_t bits(const BiderPair<F2>& p) {
  return oracle::mat_to_bits(oracle::raw(p.d)) | (oracle::mat_to_bits(oracle::raw(p.D)) << (p.d.rows() * p.d.cols()));
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

Outcome criterion9() {
  Outcome o;
  std::size_t algebras = 0, xmods = 0;
  auto check_algebra = [&](const oracle::Tensor& t, const std::string& name) {
    ++algebras;
    o.require(library_set(bider_algebra(oracle::to_algebra<2>(t)).basis) == oracle::enumerate_bider(t), name);
  };
  for (const auto& id : catalog_ids()) {
    auto e = catalog_load<F2>(id);
    if (auto* a = std::get_if<LeibnizAlgebra<F2>>(&e.payload); a && a->dim() <= 2)
      check_algebra(oracle::raw(a->structure()), id);
  }
  std::mt19937 rng(20240611);
  for (int i = 0; i < 20; ++i) check_algebra(oracle::random_leibniz(rng, 2 + i % 2), "random sample " + std::to_string(i));

  auto check_xmod = [&](const CrossedModule<F2>& x, const std::string& name) {
    if (!validate_xmod(x).ok()) return;
    ++xmods;
    auto r = oracle::raw(x);
    o.require(library_set(bider_qn(x).basis) == oracle::enumerate_bider_qn(r.q_br, r.left, r.right), name + " qn");
    o.require(library_set(bider_xmod(x).basis) == oracle::enumerate_bider_xmod(r), name + " xmod");
  };
  int k = 0;
  for (const auto& t : oracle::all_leibniz_dim2()) {
    auto q = oracle::to_algebra<2>(t);
    for (auto v : {Vector<F2>{1, 0}, Vector<F2>{0, 1}, Vector<F2>{1, 1}}) {
      auto s = Subspace<F2>::span(2, {v});
      if (is_ideal(q, s)) check_xmod(ideal_xmod(q, s), "ideal crossed module " + std::to_string(k));
    }
    ActionData<F2> zero(q, LeibnizAlgebra<F2>(1), Bilinear<F2>(2, 1, 1), Bilinear<F2>(1, 2, 1));
    check_xmod(CrossedModule<F2>(std::move(zero), Matrix<F2>(2, 1)), "zero-boundary crossed module " + std::to_string(k));
    ++k;
  }
  check_xmod(xmod<F2>("n-in-L2"), "n-in-L2");
  if (o.pass) o.detail = std::to_string(algebras) + " algebras, " + std::to_string(xmods) + " crossed modules";
  return o;
}

Outcome criterion10() {
  Outcome o;
  auto x = xmod<Q>("r2-id");
  o.require(x.top().is_lie(), "fixture is not Lie");
  auto b = bider_qn(x);
  o.require(b.dim() > 0, "empty solution space");
  for (const auto& p : b.basis) o.require(p.d == p.D, "d != D");
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      o.require(b.as_algebra.bracket_basis(i, j) == vec::neg<Q>(b.as_algebra.bracket_basis(j, i)),
                "bracket is not antisymmetric");
  return o;
}

Outcome criterion11() {
  Outcome o;
  std::size_t runs = 0;
  auto once = [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = cli::run_cli(args, out, err);
    return std::tuple{code, out.str(), err.str()};
  };
  auto twice = [&](const std::vector<std::string>& args) {
    ++runs;
    auto a = once(args);
    auto b = once(args);
    std::string line;
    for (const auto& s : args) line += s + " ";
    o.require(a == b, "differs: " + line);
  };
  for (const auto& [name, help] : cli::subcommands()) {
    if (name == "catalog") continue;
    for (const auto& id : catalog_ids()) twice({name, "--in", "catalog:" + id});
  }
  twice({"catalog"});
  for (const auto& id : catalog_ids()) twice({"catalog", "--id", id});
  if (o.pass) o.detail = std::to_string(runs) + " invocations, stdout, stderr and exit code identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"actor of every catalog crossed module is a crossed module", criterion1},
      {"actor(0,L2,0) and actor(L2,L2,id)", criterion2},
      {"biderivations of (span{e2}, L2, inclusion)", criterion3},
      {"biderivation identities and their collapse under CON1, CON2, CON3", criterion4},
      {"kernel of the canonical morphism of (sl2, sl2, id) is its center", criterion5},
      {"center of (span{e2}, L2, inclusion)", criterion6},
      {"semidirect product of the sl2 self-action", criterion7},
      {"action and morphism round trips", criterion8},
      {"exhaustive F2 oracle", criterion9},
      {"Lie regression on (r2, r2, id)", criterion10},
      {"deterministic CLI reports", criterion11},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %zu: %s%s%s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.empty() ? "" : " -- ", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}

/**
 * @file bider.hpp
 * @brief Biderivation algebras and the actor crossed module.
 *
 * Three solution spaces of homogeneous linear systems are built here:
 *
 * - Bider(m): pairs (d, D) of endomorphisms of an algebra m with
 *     d([x,y]) = [d x, y] + [x, d y],  D([x,y]) = [D x, y] − [D y, x],  [x, d y] = [x, D y].
 * - Bider(q, n): the same identities for maps q → n, where q acts on n
 *   (the top of a crossed module (n, q, μ)).
 * - Bider(n, q, μ): quadruples ((σ₁, θ₁), (σ₂, θ₂)) of biderivations of n and q
 *   that commute with μ and are compatible with the action.
 *
 * Each space is returned with its canonical basis (the RREF nullspace basis
 * of the stacked constraints, unknowns ordered d then D, resp. σ₁, θ₁, σ₂, θ₂,
 * each row-major) and its bracket expressed as structure constants in that
 * basis. Bider(q, n) and Bider(n, q, μ) with the map Δ and the action below
 * form the actor crossed module.
 */
#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lbxm/xmod.hpp"

namespace lbxm {

namespace detail {

template <Field F>
void append_matrix(Vector<F>& out, const Matrix<F>& m) {
  out.insert(out.end(), m.data().begin(), m.data().end());
}

template <Field F>
Matrix<F> read_matrix(std::size_t rows, std::size_t cols, std::span<const F> flat, std::size_t& offset) {
  Matrix<F> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = flat[offset++];
  return m;
}

}  // namespace detail

/// (d, D): both maps source → target, stored as target_dim × source_dim matrices.
template <Field F>
struct BiderPair {
  Matrix<F> d;
  Matrix<F> D;

  static std::size_t unknowns(std::size_t target_dim, std::size_t source_dim) { return 2 * target_dim * source_dim; }

  static BiderPair from_flat(std::size_t target_dim, std::size_t source_dim, std::span<const F> flat) {
    std::size_t off = 0;
    auto d = detail::read_matrix(target_dim, source_dim, flat, off);
    auto D = detail::read_matrix(target_dim, source_dim, flat, off);
    return {std::move(d), std::move(D)};
  }

  Vector<F> flatten() const {
    Vector<F> out;
    detail::append_matrix(out, d);
    detail::append_matrix(out, D);
    return out;
  }

  friend bool operator==(const BiderPair&, const BiderPair&) = default;
};

/// ((σ₁, θ₁), (σ₂, θ₂)) with σ₁, θ₁ endomorphisms of n and σ₂, θ₂ of q.
template <Field F>
struct XModBiderQuad {
  Matrix<F> sigma1;
  Matrix<F> theta1;
  Matrix<F> sigma2;
  Matrix<F> theta2;

  static std::size_t unknowns(std::size_t n, std::size_t q) { return 2 * (n * n + q * q); }

  static XModBiderQuad from_flat(std::size_t n, std::size_t q, std::span<const F> flat) {
    std::size_t off = 0;
    auto s1 = detail::read_matrix(n, n, flat, off);
    auto t1 = detail::read_matrix(n, n, flat, off);
    auto s2 = detail::read_matrix(q, q, flat, off);
    auto t2 = detail::read_matrix(q, q, flat, off);
    return {std::move(s1), std::move(t1), std::move(s2), std::move(t2)};
  }

  Vector<F> flatten() const {
    Vector<F> out;
    detail::append_matrix(out, sigma1);
    detail::append_matrix(out, theta1);
    detail::append_matrix(out, sigma2);
    detail::append_matrix(out, theta2);
    return out;
  }

  BiderPair<F> first() const { return {sigma1, theta1}; }
  BiderPair<F> second() const { return {sigma2, theta2}; }

  friend bool operator==(const XModBiderQuad&, const XModBiderQuad&) = default;
};

/// A solution space with its canonical basis and induced Leibniz structure.
template <Field F, class Elem>
struct BiderAlgebra {
  std::string construction;
  std::size_t shape_a = 0;  // target dim (pairs) or dim n (quadruples)
  std::size_t shape_b = 0;  // source dim (pairs) or dim q (quadruples)
  Subspace<F> solutions;    // inside the flattened unknown space
  std::vector<Elem> basis;
  LeibnizAlgebra<F> as_algebra;

  std::size_t dim() const { return basis.size(); }

  std::optional<Vector<F>> coordinates(const Elem& e) const { return solutions.coordinates(e.flatten()); }

  Vector<F> coordinates_or_throw(const Elem& e, const std::string& what) const {
    auto c = coordinates(e);
    if (!c) throw InternalError(what + " does not lie in " + construction);
    return *std::move(c);
  }

  Elem element(std::span<const F> coords) const {
    return Elem::from_flat(shape_a, shape_b, solutions.combine(coords));
  }
};

template <Field F>
using PairAlgebra = BiderAlgebra<F, BiderPair<F>>;
template <Field F>
using QuadAlgebra = BiderAlgebra<F, XModBiderQuad<F>>;

namespace detail {

/// Residual of the three biderivation identities for d, D: q → n, where q acts
/// on n by `left` (q × n → n) and `right` (n × q → n).
template <Field F>
void append_bider_residual(Vector<F>& out, const LeibnizAlgebra<F>& q, const Bilinear<F>& left,
                           const Bilinear<F>& right, const Matrix<F>& d, const Matrix<F>& D) {
  const std::size_t nq = q.dim();
  std::vector<Vector<F>> dcol(nq), Dcol(nq);
  for (std::size_t i = 0; i < nq; ++i) {
    dcol[i] = d.column(i);
    Dcol[i] = D.column(i);
  }
  for (std::size_t i = 0; i < nq; ++i)
    for (std::size_t j = 0; j < nq; ++j) {
      auto qi = q.basis_vector(i), qj = q.basis_vector(j);
      auto qq = q.bracket_basis(i, j);
      // d([q,q']) − [d q, q'] − [q, d q']
      auto r1 = vec::sub<F>(vec::sub<F>(d.apply(qq), right.apply(dcol[i], qj)), left.apply(qi, dcol[j]));
      // D([q,q']) − [D q, q'] + [D q', q]
      auto r2 = vec::add<F>(vec::sub<F>(D.apply(qq), right.apply(Dcol[i], qj)), right.apply(Dcol[j], qi));
      // [q, d q'] − [q, D q']
      auto r3 = vec::sub<F>(left.apply(qi, dcol[j]), left.apply(qi, Dcol[j]));
      out.insert(out.end(), r1.begin(), r1.end());
      out.insert(out.end(), r2.begin(), r2.end());
      out.insert(out.end(), r3.begin(), r3.end());
    }
}

/// (d₁ μ d₂ − d₂ μ d₁, D₁ μ d₂ − d₂ μ D₁)
template <Field F>
BiderPair<F> twisted_bracket(const BiderPair<F>& a, const BiderPair<F>& b, const Matrix<F>& mu) {
  return {a.d * mu * b.d - b.d * mu * a.d, a.D * mu * b.d - b.d * mu * a.D};
}

/// (d₁ d₂ − d₂ d₁, D₁ d₂ − d₂ D₁)
template <Field F>
BiderPair<F> plain_bracket(const BiderPair<F>& a, const BiderPair<F>& b) {
  return {a.d * b.d - b.d * a.d, a.D * b.d - b.d * a.D};
}

template <Field F, class Elem, class Residual, class Bracket>
BiderAlgebra<F, Elem> solve_linear_structure(std::string construction, std::size_t shape_a, std::size_t shape_b,
                                             Residual residual, Bracket bracket) {
  const std::size_t unknowns = Elem::unknowns(shape_a, shape_b);
  std::vector<Vector<F>> columns;
  columns.reserve(unknowns);
  std::size_t rows = 0;
  for (std::size_t k = 0; k < unknowns; ++k) {
    auto e = Elem::from_flat(shape_a, shape_b, vec::unit<F>(unknowns, k));
    columns.push_back(residual(e));
    rows = columns.back().size();
  }
  BiderAlgebra<F, Elem> out;
  out.construction = std::move(construction);
  out.shape_a = shape_a;
  out.shape_b = shape_b;
  out.solutions = unknowns == 0 ? Subspace<F>(0) : nullspace_of_columns<F>(rows, columns);
  for (std::size_t i = 0; i < out.solutions.dim(); ++i)
    out.basis.push_back(Elem::from_flat(shape_a, shape_b, out.solutions.vector(i)));
  LeibnizAlgebra<F> alg(out.basis.size());
  for (std::size_t i = 0; i < out.basis.size(); ++i)
    for (std::size_t j = 0; j < out.basis.size(); ++j)
      alg.set_bracket(i, j, out.coordinates_or_throw(bracket(out.basis[i], out.basis[j]), "bracket of basis elements"));
  out.as_algebra = std::move(alg);
  return out;
}

}  // namespace detail

/// Residual of the biderivation identities of an algebra; zero iff (d, D) ∈ Bider(a).
template <Field F>
Vector<F> bider_residual(const LeibnizAlgebra<F>& a, const BiderPair<F>& p) {
  Vector<F> out;
  detail::append_bider_residual(out, a, a.structure(), a.structure(), p.d, p.D);
  return out;
}

/// Residual of the biderivation identities for maps base → top of a crossed module.
template <Field F>
Vector<F> bider_qn_residual(const CrossedModule<F>& x, const BiderPair<F>& p) {
  Vector<F> out;
  detail::append_bider_residual(out, x.base(), x.action().left, x.action().right, p.d, p.D);
  return out;
}

/// Residual of the eight defining conditions of Bider(n, q, μ).
template <Field F>
Vector<F> bider_xmod_residual(const CrossedModule<F>& x, const XModBiderQuad<F>& Q) {
  const auto& N = x.top();
  const auto& Qa = x.base();
  const auto& mu = x.boundary();
  Vector<F> out;
  detail::append_bider_residual(out, N, N.structure(), N.structure(), Q.sigma1, Q.theta1);
  detail::append_bider_residual(out, Qa, Qa.structure(), Qa.structure(), Q.sigma2, Q.theta2);
  detail::append_matrix(out, Matrix<F>(mu * Q.sigma1 - Q.sigma2 * mu));
  detail::append_matrix(out, Matrix<F>(mu * Q.theta1 - Q.theta2 * mu));
  auto push = [&](const Vector<F>& v) { out.insert(out.end(), v.begin(), v.end()); };
  for (std::size_t a = 0; a < Qa.dim(); ++a) {
    auto q = Qa.basis_vector(a);
    auto s2q = Q.sigma2.column(a), t2q = Q.theta2.column(a);
    for (std::size_t b = 0; b < N.dim(); ++b) {
      auto n = N.basis_vector(b);
      auto s1n = Q.sigma1.column(b), t1n = Q.theta1.column(b);
      auto qn = x.act_left(q, n), nq = x.act_right(n, q);
      // σ₁([q,n]) = [σ₂ q, n] + [q, σ₁ n]
      push(vec::sub<F>(vec::sub<F>(Q.sigma1.apply(qn), x.act_left(s2q, n)), x.act_left(q, s1n)));
      // σ₁([n,q]) = [σ₁ n, q] + [n, σ₂ q]
      push(vec::sub<F>(vec::sub<F>(Q.sigma1.apply(nq), x.act_right(s1n, q)), x.act_right(n, s2q)));
      // θ₁([q,n]) = [θ₂ q, n] − [θ₁ n, q]
      push(vec::add<F>(vec::sub<F>(Q.theta1.apply(qn), x.act_left(t2q, n)), x.act_right(t1n, q)));
      // θ₁([n,q]) = [θ₁ n, q] − [θ₂ q, n]
      push(vec::add<F>(vec::sub<F>(Q.theta1.apply(nq), x.act_right(t1n, q)), x.act_left(t2q, n)));
      // [q, σ₁ n] = [q, θ₁ n]
      push(vec::sub<F>(x.act_left(q, s1n), x.act_left(q, t1n)));
      // [n, σ₂ q] = [n, θ₂ q]
      push(vec::sub<F>(x.act_right(n, s2q), x.act_right(n, t2q)));
    }
  }
  return out;
}

template <Field F>
bool is_bider(const LeibnizAlgebra<F>& a, const BiderPair<F>& p) {
  return vec::is_zero<F>(bider_residual(a, p));
}
template <Field F>
bool is_bider_qn(const CrossedModule<F>& x, const BiderPair<F>& p) {
  return vec::is_zero<F>(bider_qn_residual(x, p));
}
template <Field F>
bool is_bider_xmod(const CrossedModule<F>& x, const XModBiderQuad<F>& Q) {
  return vec::is_zero<F>(bider_xmod_residual(x, Q));
}

/// Bracket of Bider(n, q, μ): the Bider bracket in each component.
template <Field F>
XModBiderQuad<F> quad_bracket(const XModBiderQuad<F>& a, const XModBiderQuad<F>& b) {
  auto first = detail::plain_bracket(a.first(), b.first());
  auto second = detail::plain_bracket(a.second(), b.second());
  return {std::move(first.d), std::move(first.D), std::move(second.d), std::move(second.D)};
}

/// Bracket of Bider(q, n), twisted by the boundary μ.
template <Field F>
BiderPair<F> pair_bracket(const CrossedModule<F>& x, const BiderPair<F>& a, const BiderPair<F>& b) {
  return detail::twisted_bracket(a, b, x.boundary());
}

/// Bider(a) with the bracket (d₁d₂ − d₂d₁, D₁d₂ − d₂D₁).
template <Field F>
PairAlgebra<F> bider_algebra(const LeibnizAlgebra<F>& a) {
  return detail::solve_linear_structure<F, BiderPair<F>>(
      "Bider(a)", a.dim(), a.dim(), [&](const BiderPair<F>& p) { return bider_residual(a, p); },
      [](const BiderPair<F>& p, const BiderPair<F>& q) { return detail::plain_bracket(p, q); });
}

/// Bider(q, n) of a crossed module (n, q, μ) with the μ-twisted bracket.
template <Field F>
PairAlgebra<F> bider_qn(const CrossedModule<F>& x) {
  return detail::solve_linear_structure<F, BiderPair<F>>(
      "Bider(q,n)", x.top().dim(), x.base().dim(), [&](const BiderPair<F>& p) { return bider_qn_residual(x, p); },
      [&](const BiderPair<F>& p, const BiderPair<F>& q) { return pair_bracket(x, p, q); });
}

/// Bider(n, q, μ) with the componentwise bracket.
template <Field F>
QuadAlgebra<F> bider_xmod(const CrossedModule<F>& x) {
  return detail::solve_linear_structure<F, XModBiderQuad<F>>(
      "Bider(n,q,mu)", x.top().dim(), x.base().dim(),
      [&](const XModBiderQuad<F>& Q) { return bider_xmod_residual(x, Q); },
      [](const XModBiderQuad<F>& a, const XModBiderQuad<F>& b) { return quad_bracket(a, b); });
}

/// (ad(x), Ad(x)) with ad(x)(y) = −[y, x] and Ad(x)(y) = [x, y].
template <Field F>
BiderPair<F> inner_bider(const LeibnizAlgebra<F>& a, std::type_identity_t<std::span<const F>> x) {
  const std::size_t n = a.dim();
  Matrix<F> ad(n, n), Ad(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto ej = a.basis_vector(j);
    auto l = vec::neg<F>(a.bracket(ej, x));
    auto r = a.bracket(x, ej);
    for (std::size_t i = 0; i < n; ++i) {
      ad(i, j) = l[i];
      Ad(i, j) = r[i];
    }
  }
  return {std::move(ad), std::move(Ad)};
}

/// Δ(d, D) = ((d μ, D μ), (μ d, μ D))
template <Field F>
XModBiderQuad<F> delta_of(const CrossedModule<F>& x, const BiderPair<F>& p) {
  const auto& mu = x.boundary();
  return {p.d * mu, p.D * mu, mu * p.d, mu * p.D};
}

/// Matrix of Δ: Bider(q,n) → Bider(n,q,μ) in the two canonical bases.
template <Field F>
Matrix<F> delta(const CrossedModule<F>& x, const PairAlgebra<F>& top, const QuadAlgebra<F>& base) {
  Matrix<F> m(base.dim(), top.dim());
  for (std::size_t j = 0; j < top.dim(); ++j) {
    auto c = base.coordinates_or_throw(delta_of(x, top.basis[j]), "image under delta");
    for (std::size_t i = 0; i < base.dim(); ++i) m(i, j) = c[i];
  }
  return m;
}

template <Field F>
Matrix<F> delta(const CrossedModule<F>& x) {
  return delta(x, bider_qn(x), bider_xmod(x));
}

/// [Q, (d,D)] = (σ₁ d − d σ₂, θ₁ d − d θ₂)
template <Field F>
BiderPair<F> quad_acts_left(const XModBiderQuad<F>& Q, const BiderPair<F>& p) {
  return {Q.sigma1 * p.d - p.d * Q.sigma2, Q.theta1 * p.d - p.d * Q.theta2};
}

/// [(d,D), Q] = (d σ₂ − σ₁ d, D σ₂ − σ₁ D)
template <Field F>
BiderPair<F> quad_acts_right(const BiderPair<F>& p, const XModBiderQuad<F>& Q) {
  return {p.d * Q.sigma2 - Q.sigma1 * p.d, p.D * Q.sigma2 - Q.sigma1 * p.D};
}

/// The actor candidate (Bider(q,n), Bider(n,q,μ), Δ) together with the
/// solution bases its structure constants are expressed in.
template <Field F>
struct Actor {
  PairAlgebra<F> top;
  QuadAlgebra<F> base;
  CrossedModule<F> xmod;
  ConditionFlags conditions;
};

template <Field F>
Actor<F> actor(const CrossedModule<F>& x) {
  auto top = bider_qn(x);
  auto base = bider_xmod(x);
  auto boundary = delta(x, top, base);
  Bilinear<F> left(base.dim(), top.dim(), top.dim()), right(top.dim(), base.dim(), top.dim());
  for (std::size_t i = 0; i < base.dim(); ++i)
    for (std::size_t j = 0; j < top.dim(); ++j) {
      left.set_product(i, j, top.coordinates_or_throw(quad_acts_left(base.basis[i], top.basis[j]), "left action"));
      right.set_product(j, i, top.coordinates_or_throw(quad_acts_right(top.basis[j], base.basis[i]), "right action"));
    }
  ActionData<F> action(base.as_algebra, top.as_algebra, std::move(left), std::move(right));
  CrossedModule<F> xm(std::move(action), std::move(boundary));
  return {std::move(top), std::move(base), std::move(xm), check_conditions(x)};
}

/// (d_m, D_m) with d_m(q) = −[q, m] and D_m(q) = [m, q].
template <Field F>
BiderPair<F> inner_pair(const CrossedModule<F>& x, std::type_identity_t<std::span<const F>> m) {
  const std::size_t nn = x.top().dim(), nq = x.base().dim();
  Matrix<F> d(nn, nq), D(nn, nq);
  for (std::size_t a = 0; a < nq; ++a) {
    auto q = x.base().basis_vector(a);
    auto l = vec::neg<F>(x.act_left(q, m));
    auto r = x.act_right(m, q);
    for (std::size_t i = 0; i < nn; ++i) {
      d(i, a) = l[i];
      D(i, a) = r[i];
    }
  }
  return {std::move(d), std::move(D)};
}

/// σ₁(n) = −[n, p], θ₁(n) = [p, n], σ₂(q) = −[q, p], θ₂(q) = [p, q].
template <Field F>
XModBiderQuad<F> inner_quad(const CrossedModule<F>& x, std::type_identity_t<std::span<const F>> p) {
  const std::size_t nn = x.top().dim(), nq = x.base().dim();
  Matrix<F> s1(nn, nn), t1(nn, nn), s2(nq, nq), t2(nq, nq);
  for (std::size_t b = 0; b < nn; ++b) {
    auto n = x.top().basis_vector(b);
    auto s = vec::neg<F>(x.act_right(n, p)), t = x.act_left(p, n);
    for (std::size_t i = 0; i < nn; ++i) {
      s1(i, b) = s[i];
      t1(i, b) = t[i];
    }
  }
  for (std::size_t c = 0; c < nq; ++c) {
    auto q = x.base().basis_vector(c);
    auto s = vec::neg<F>(x.base().bracket(q, p)), t = x.base().bracket(p, q);
    for (std::size_t i = 0; i < nq; ++i) {
      s2(i, c) = s[i];
      t2(i, c) = t[i];
    }
  }
  return {std::move(s1), std::move(t1), std::move(s2), std::move(t2)};
}

/// The canonical morphism x → actor(x): m ↦ (d_m, D_m), p ↦ inner quadruple of p.
template <Field F>
XModMorphism<F> canonical_morphism(const CrossedModule<F>& x, const Actor<F>& act) {
  const std::size_t nn = x.top().dim(), nq = x.base().dim();
  Matrix<F> phi(act.top.dim(), nn), psi(act.base.dim(), nq);
  for (std::size_t b = 0; b < nn; ++b) {
    auto c = act.top.coordinates_or_throw(inner_pair(x, x.top().basis_vector(b)), "inner biderivation of a top element");
    for (std::size_t i = 0; i < c.size(); ++i) phi(i, b) = c[i];
  }
  for (std::size_t a = 0; a < nq; ++a) {
    auto c = act.base.coordinates_or_throw(inner_quad(x, x.base().basis_vector(a)), "inner quadruple of a base element");
    for (std::size_t i = 0; i < c.size(); ++i) psi(i, a) = c[i];
  }
  return {x, act.xmod, std::move(phi), std::move(psi)};
}

template <Field F>
XModMorphism<F> canonical_morphism(const CrossedModule<F>& x) {
  return canonical_morphism(x, actor(x));
}

/// Inn(x): the image of the canonical morphism, as a sub-crossed module of actor(x).
template <Field F>
SubCrossedModule<F> inner_xmod(const CrossedModule<F>& x, const Actor<F>& act) {
  return image(canonical_morphism(x, act));
}

template <Field F>
SubCrossedModule<F> inner_xmod(const CrossedModule<F>& x) {
  return inner_xmod(x, actor(x));
}

/// Out(x) = actor(x) / Inn(x).
template <Field F>
QuotientXMod<F> outer_xmod(const CrossedModule<F>& x, const Actor<F>& act) {
  auto inn = inner_xmod(x, act);
  return quotient_xmod(act.xmod, inn.top, inn.base);
}

template <Field F>
QuotientXMod<F> outer_xmod(const CrossedModule<F>& x) {
  return outer_xmod(x, actor(x));
}

}  // namespace lbxm

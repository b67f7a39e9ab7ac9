/**
 * @file action.hpp
 * @brief Actions of one Leibniz algebra on another and the semidirect product.
 */
#pragma once

#include <string>
#include <utility>

#include "lbxm/algebra.hpp"

namespace lbxm {

/// An action of `actor` (p) on `target` (m): bilinear maps
/// left: p × m → m, (p, m) ↦ [p, m] and right: m × p → m, (m, p) ↦ [m, p].
template <Field F>
struct ActionData {
  LeibnizAlgebra<F> actor;
  LeibnizAlgebra<F> target;
  Bilinear<F> left;
  Bilinear<F> right;

  ActionData() = default;
  ActionData(LeibnizAlgebra<F> p, LeibnizAlgebra<F> m, Bilinear<F> l, Bilinear<F> r)
      : actor(std::move(p)), target(std::move(m)), left(std::move(l)), right(std::move(r)) {
    const auto np = actor.dim(), nm = target.dim();
    if (left.left_dim() != np || left.right_dim() != nm || left.out_dim() != nm)
      throw DimensionMismatch("left action tensor has shape " + left.shape());
    if (right.left_dim() != nm || right.right_dim() != np || right.out_dim() != nm)
      throw DimensionMismatch("right action tensor has shape " + right.shape());
  }

  /// [p, m]
  Vector<F> act_left(std::span<const F> p, std::span<const F> m) const { return left.apply(p, m); }
  /// [m, p]
  Vector<F> act_right(std::span<const F> m, std::span<const F> p) const { return right.apply(m, p); }

  friend bool operator==(const ActionData&, const ActionData&) = default;
};

template <Field F>
ActionData<F> zero_action(const LeibnizAlgebra<F>& actor, const LeibnizAlgebra<F>& target) {
  return {actor, target, Bilinear<F>(actor.dim(), target.dim(), target.dim()),
          Bilinear<F>(target.dim(), actor.dim(), target.dim())};
}

/// The action of an algebra on itself by its own bracket.
template <Field F>
ActionData<F> bracket_action(const LeibnizAlgebra<F>& a) {
  return {a, a, a.structure(), a.structure()};
}

/// Action of a on an ideal by the restricted bracket, in the ideal's RREF basis.
template <Field F>
ActionData<F> ideal_action(const LeibnizAlgebra<F>& a, const Subspace<F>& ideal) {
  if (!is_ideal(a, ideal)) throw PreconditionFailed("ideal_action: subspace is not an ideal");
  auto sub = subalgebra(a, ideal);
  const std::size_t k = ideal.dim(), n = a.dim();
  Bilinear<F> left(n, k, k), right(k, n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < k; ++r) {
      auto ei = a.basis_vector(i);
      left.set_product(i, r, *ideal.coordinates(a.bracket(ei, ideal.basis().row(r))));
      right.set_product(r, i, *ideal.coordinates(a.bracket(ideal.basis().row(r), ei)));
    }
  return {a, std::move(sub.algebra), std::move(left), std::move(right)};
}

/// The six compatibility identities, labelled A1 to A6 in this order:
///   [p,[m,m']] = [[p,m],m'] − [[p,m'],m]
///   [m,[p,m']] = [[m,p],m'] − [[m,m'],p]
///   [m,[m',p]] = [[m,m'],p] − [[m,p],m']
///   [m,[p,p']] = [[m,p],p'] − [[m,p'],p]
///   [p,[m,p']] = [[p,m],p'] − [[p,p'],m]
///   [p,[p',m]] = [[p,p'],m] − [[p,m],p']
/// Every violated instance is reported.
template <Field F>
Report<F> validate_action(const ActionData<F>& d) {
  Report<F> report;
  const auto& P = d.actor;
  const auto& M = d.target;
  const std::size_t np = P.dim(), nm = M.dim();
  auto ep = [&](std::size_t i) { return P.basis_vector(i); };
  auto em = [&](std::size_t i) { return M.basis_vector(i); };
  auto pm = [&](std::span<const F> p, std::span<const F> m) { return d.act_left(p, m); };
  auto mp = [&](std::span<const F> m, std::span<const F> p) { return d.act_right(m, p); };

  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nm; ++b)
      for (std::size_t c = 0; c < nm; ++c) {
        auto p = ep(a), m = em(b), m2 = em(c);
        report.expect_equal("A1", {a, b, c}, pm(p, M.bracket(m, m2)),
                            vec::sub<F>(M.bracket(pm(p, m), m2), M.bracket(pm(p, m2), m)));
      }
  for (std::size_t b = 0; b < nm; ++b)
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t c = 0; c < nm; ++c) {
        auto m = em(b), p = ep(a), m2 = em(c);
        report.expect_equal("A2", {b, a, c}, M.bracket(m, pm(p, m2)),
                            vec::sub<F>(M.bracket(mp(m, p), m2), mp(M.bracket(m, m2), p)));
      }
  for (std::size_t b = 0; b < nm; ++b)
    for (std::size_t c = 0; c < nm; ++c)
      for (std::size_t a = 0; a < np; ++a) {
        auto m = em(b), m2 = em(c), p = ep(a);
        report.expect_equal("A3", {b, c, a}, M.bracket(m, mp(m2, p)),
                            vec::sub<F>(mp(M.bracket(m, m2), p), M.bracket(mp(m, p), m2)));
      }
  for (std::size_t b = 0; b < nm; ++b)
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t c = 0; c < np; ++c) {
        auto m = em(b), p = ep(a), p2 = ep(c);
        report.expect_equal("A4", {b, a, c}, mp(m, P.bracket(p, p2)),
                            vec::sub<F>(mp(mp(m, p), p2), mp(mp(m, p2), p)));
      }
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nm; ++b)
      for (std::size_t c = 0; c < np; ++c) {
        auto p = ep(a), m = em(b), p2 = ep(c);
        report.expect_equal("A5", {a, b, c}, pm(p, mp(m, p2)),
                            vec::sub<F>(mp(pm(p, m), p2), pm(P.bracket(p, p2), m)));
      }
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t c = 0; c < np; ++c)
      for (std::size_t b = 0; b < nm; ++b) {
        auto p = ep(a), p2 = ep(c), m = em(b);
        report.expect_equal("A6", {a, c, b}, pm(p, pm(p2, m)),
                            vec::sub<F>(pm(P.bracket(p, p2), m), mp(pm(p, m), p2)));
      }
  return report;
}

template <Field F>
struct SemidirectProduct {
  LeibnizAlgebra<F> algebra;  // basis: target first, then actor
  Matrix<F> inclusion_target;
  Matrix<F> inclusion_actor;
  Matrix<F> projection_actor;
};

/// m ⋊ p with [(m,p),(m',p')] = ([m,m'] + [p,m'] + [m,p'], [p,p']).
template <Field F>
SemidirectProduct<F> semidirect_algebra(const ActionData<F>& d) {
  auto report = validate_action(d);
  if (!report.ok())
    throw PreconditionFailed("semidirect_algebra: action violates " + report.violations.front().label);
  const std::size_t nm = d.target.dim(), np = d.actor.dim(), n = nm + np;
  LeibnizAlgebra<F> s(n);
  auto split = [&](std::size_t i) {
    return i < nm ? std::pair{d.target.basis_vector(i), vec::zero<F>(np)}
                  : std::pair{vec::zero<F>(nm), d.actor.basis_vector(i - nm)};
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto [m1, p1] = split(i);
      auto [m2, p2] = split(j);
      auto top = vec::add<F>(vec::add<F>(d.target.bracket(m1, m2), d.act_left(p1, m2)), d.act_right(m1, p2));
      s.set_bracket(i, j, vec::concat<F>(top, d.actor.bracket(p1, p2)));
    }
  Matrix<F> inc_m(n, nm), inc_p(n, np), proj_p(np, n);
  for (std::size_t i = 0; i < nm; ++i) inc_m(i, i) = F::from_int(1);
  for (std::size_t i = 0; i < np; ++i) {
    inc_p(nm + i, i) = F::from_int(1);
    proj_p(i, nm + i) = F::from_int(1);
  }
  return {std::move(s), std::move(inc_m), std::move(inc_p), std::move(proj_p)};
}

}  // namespace lbxm

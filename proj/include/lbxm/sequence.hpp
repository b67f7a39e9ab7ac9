/**
 * @file sequence.hpp
 * @brief Short exact sequences of crossed modules and the induced map into
 *        the actor of the kernel.
 *
 * Given 0 → (n,q,μ) → (n',q',μ') → (n'',q'',μ'') → 0 the middle term acts
 * on the kernel by conjugation, which yields (α, β): (n',q',μ') → Act(n,q,μ).
 * The left square (restriction of (α, β) to the kernel is the canonical
 * morphism) and the right square (α, β followed by Act → Out factors through
 * the quotient) are checked by matrix equality.
 */
#pragma once

#include <string>
#include <utility>

#include "lbxm/bider.hpp"

namespace lbxm {

template <Field F>
struct ShortExactSequence {
  XModMorphism<F> inclusion;   // (n,q,μ) → (n',q',μ')
  XModMorphism<F> projection;  // (n',q',μ') → (n'',q'',μ'')

  const CrossedModule<F>& sub() const { return inclusion.source; }
  const CrossedModule<F>& middle() const { return inclusion.target; }
  const CrossedModule<F>& quotient() const { return projection.target; }
};

template <Field F>
Report<F> validate_sequence(const ShortExactSequence<F>& s) {
  Report<F> report;
  if (!(s.inclusion.target == s.projection.source)) {
    report.violations.push_back({"composable", {}, {}, {}});
    return report;
  }
  report.merge(validate_xmod(s.sub()), "sub.");
  report.merge(validate_xmod(s.middle()), "middle.");
  report.merge(validate_xmod(s.quotient()), "quotient.");
  report.merge(validate_morphism(s.inclusion), "inclusion.");
  report.merge(validate_morphism(s.projection), "projection.");
  auto flag = [&](bool ok, const std::string& label) {
    if (!ok) report.violations.push_back({label, {}, {}, {}});
  };
  flag(rank(s.inclusion.top_map) == s.inclusion.top_map.cols(), "injective-top");
  flag(rank(s.inclusion.base_map) == s.inclusion.base_map.cols(), "injective-base");
  flag(rank(s.projection.top_map) == s.projection.top_map.rows(), "surjective-top");
  flag(rank(s.projection.base_map) == s.projection.base_map.rows(), "surjective-base");
  flag(Subspace<F>::column_space(s.inclusion.top_map) == nullspace(s.projection.top_map), "exact-top");
  flag(Subspace<F>::column_space(s.inclusion.base_map) == nullspace(s.projection.base_map), "exact-base");
  return report;
}

template <Field F>
struct SequenceLift {
  Actor<F> actor;                   // of the kernel (n,q,μ)
  XModMorphism<F> alpha_beta;       // middle → actor
  XModMorphism<F> canonical;        // kernel → actor
  QuotientXMod<F> outer;            // actor → Out
  XModMorphism<F> induced;          // quotient → Out
  Report<F> diagram;                // squares and morphism checks
};

namespace detail {

template <Field F>
Vector<F> pull_back(const Matrix<F>& injection, const Vector<F>& v, const char* what) {
  auto x = solve(injection, v);
  if (!x) throw InternalError(std::string(what) + " leaves the image of the inclusion");
  return *std::move(x);
}

}  // namespace detail

/// Builds (α, β) with α(n') = (d_{n'}, D_{n'}), d_{n'}(q) = −[q, n'],
/// D_{n'}(q) = [n', q], and β(q') the quadruple of conjugation by q'
/// restricted to (n, q), then checks both squares of the diagram.
/// Requires an exact sequence and a CON condition on the kernel.
template <Field F>
SequenceLift<F> lift_sequence(const ShortExactSequence<F>& s) {
  auto valid = validate_sequence(s);
  if (!valid.ok()) throw PreconditionFailed("lift_sequence: not a short exact sequence (" + valid.violations.front().label + ")");
  const auto& x = s.sub();
  if (!check_conditions(x).any())
    throw PreconditionFailed("lift_sequence: the kernel satisfies none of CON1, CON2, CON3");
  const auto& mid = s.middle();
  const auto& in = s.inclusion.top_map;
  const auto& iq = s.inclusion.base_map;
  const std::size_t nn = x.top().dim(), nq = x.base().dim();

  SequenceLift<F> out{actor(x), {}, {}, {}, {}, {}};
  const auto& act = out.actor;

  Matrix<F> A(act.top.dim(), mid.top().dim());
  for (std::size_t b = 0; b < mid.top().dim(); ++b) {
    auto n1 = mid.top().basis_vector(b);
    Matrix<F> d(nn, nq), D(nn, nq);
    for (std::size_t a = 0; a < nq; ++a) {
      auto q = iq.column(a);
      auto l = detail::pull_back(in, vec::neg<F>(mid.act_left(q, n1)), "-[q,n']");
      auto r = detail::pull_back(in, mid.act_right(n1, q), "[n',q]");
      for (std::size_t i = 0; i < nn; ++i) {
        d(i, a) = l[i];
        D(i, a) = r[i];
      }
    }
    auto c = act.top.coordinates_or_throw(BiderPair<F>{std::move(d), std::move(D)}, "alpha of a middle element");
    for (std::size_t i = 0; i < c.size(); ++i) A(i, b) = c[i];
  }

  Matrix<F> B(act.base.dim(), mid.base().dim());
  for (std::size_t b = 0; b < mid.base().dim(); ++b) {
    auto q1 = mid.base().basis_vector(b);
    Matrix<F> s1(nn, nn), t1(nn, nn), s2(nq, nq), t2(nq, nq);
    for (std::size_t j = 0; j < nn; ++j) {
      auto n = in.column(j);
      auto sv = detail::pull_back(in, vec::neg<F>(mid.act_right(n, q1)), "-[n,q']");
      auto tv = detail::pull_back(in, mid.act_left(q1, n), "[q',n]");
      for (std::size_t i = 0; i < nn; ++i) {
        s1(i, j) = sv[i];
        t1(i, j) = tv[i];
      }
    }
    for (std::size_t j = 0; j < nq; ++j) {
      auto q = iq.column(j);
      auto sv = detail::pull_back(iq, vec::neg<F>(mid.base().bracket(q, q1)), "-[q,q']");
      auto tv = detail::pull_back(iq, mid.base().bracket(q1, q), "[q',q]");
      for (std::size_t i = 0; i < nq; ++i) {
        s2(i, j) = sv[i];
        t2(i, j) = tv[i];
      }
    }
    auto c = act.base.coordinates_or_throw(XModBiderQuad<F>{std::move(s1), std::move(t1), std::move(s2), std::move(t2)},
                                           "beta of a middle element");
    for (std::size_t i = 0; i < c.size(); ++i) B(i, b) = c[i];
  }

  out.alpha_beta = {mid, act.xmod, std::move(A), std::move(B)};
  out.canonical = canonical_morphism(x, act);
  auto& diagram = out.diagram;
  diagram.merge(validate_morphism(out.alpha_beta), "alpha-beta.");
  expect_equal_columns<F>(diagram, "left-square-top", out.alpha_beta.top_map * in, out.canonical.top_map);
  expect_equal_columns<F>(diagram, "left-square-base", out.alpha_beta.base_map * iq, out.canonical.base_map);

  out.outer = outer_xmod(x, act);
  const auto& pn = s.projection.top_map;
  const auto& pq = s.projection.base_map;
  const auto& Q = s.quotient();
  Matrix<F> gn(out.outer.xmod.top().dim(), Q.top().dim()), gq(out.outer.xmod.base().dim(), Q.base().dim());
  for (std::size_t c = 0; c < Q.top().dim(); ++c) {
    auto lift = *solve(pn, Q.top().basis_vector(c));
    auto img = out.outer.top_projection.apply(out.alpha_beta.top_map.apply(lift));
    for (std::size_t i = 0; i < img.size(); ++i) gn(i, c) = img[i];
  }
  for (std::size_t c = 0; c < Q.base().dim(); ++c) {
    auto lift = *solve(pq, Q.base().basis_vector(c));
    auto img = out.outer.base_projection.apply(out.alpha_beta.base_map.apply(lift));
    for (std::size_t i = 0; i < img.size(); ++i) gq(i, c) = img[i];
  }
  out.induced = {Q, out.outer.xmod, std::move(gn), std::move(gq)};
  expect_equal_columns<F>(diagram, "right-square-top", out.outer.top_projection * out.alpha_beta.top_map,
                          out.induced.top_map * pn);
  expect_equal_columns<F>(diagram, "right-square-base", out.outer.base_projection * out.alpha_beta.base_map,
                          out.induced.base_map * pq);
  diagram.merge(validate_morphism(out.induced), "induced.");
  return out;
}

}  // namespace lbxm

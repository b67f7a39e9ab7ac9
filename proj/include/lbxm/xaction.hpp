/**
 * @file xaction.hpp
 * @brief Actions of one crossed module on another, their description as
 *        morphisms into the actor, and the semidirect product.
 *
 * An action of (m, p, η) on (n, q, μ) is given by actions of p on n and on
 * q together with bilinear maps ξ₁: m × q → n and ξ₂: q × m → n. The
 * actions of m on n and q are those of p pulled back along η and are never
 * stored.
 *
 * Axiom labels:
 *
 *   LbEQ1   μ[p,n] = [p,μn]                 LbEQ2   μ[n,p] = [μn,p]
 *   LbCOM1  [n,[p,q]] = [[n,p],q] − [[n,q],p]
 *   LbCOM2  [p,[n,q]] = [[p,n],q] − [[p,q],n]
 *   LbCOM3  [p,[q,n]] = [[p,q],n] − [[p,n],q]
 *   LbCOM4  [n,[q,p]] = [[n,q],p] − [[n,p],q]
 *   LbCOM5  [q,[n,p]] = [[q,n],p] − [[q,p],n]
 *   LbCOM6  [q,[p,n]] = [[q,p],n] − [[q,n],p]
 *   LbM1a   μξ₂(q,m) = [q,m]                LbM1b   μξ₁(m,q) = [m,q]
 *   LbM2a   ξ₂(μn,m) = [n,m]                LbM2b   ξ₁(m,μn) = [m,n]
 *   LbM3a   ξ₂(q,[p,m]) = ξ₂([q,p],m) − [ξ₂(q,m),p]
 *   LbM3b   ξ₁([p,m],q) = ξ₂([p,q],m) − [p,ξ₂(q,m)]
 *   LbM3c   ξ₂(q,[m,p]) = [ξ₂(q,m),p] − ξ₂([q,p],m)
 *   LbM3d   ξ₁([m,p],q) = [ξ₁(m,q),p] − ξ₁(m,[q,p])
 *   LbM4a   ξ₂(q,[m,m']) = [ξ₂(q,m),m'] − [ξ₂(q,m'),m]
 *   LbM4b   ξ₁([m,m'],q) = [ξ₁(m,q),m'] − [m,ξ₂(q,m')]
 *   LbM5a   ξ₂([q,q'],m) = [ξ₂(q,m),q'] + [q,ξ₂(q',m)]
 *   LbM5b   ξ₁(m,[q,q']) = [ξ₁(m,q),q'] − [ξ₁(m,q'),q]
 *   LbM5c   [q,ξ₁(m,q')] = −[q,ξ₂(q',m)]
 *   LbM6a   ξ₁(m,[p,q]) = −ξ₁(m,[q,p])
 *   LbM6b   [p,ξ₁(m,q)] = −[p,ξ₂(q,m)]
 */
#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "lbxm/bider.hpp"

namespace lbxm {

template <Field F>
struct XModActionData {
  CrossedModule<F> actor_xmod;   // (m, p, η)
  CrossedModule<F> target_xmod;  // (n, q, μ)
  ActionData<F> p_on_n;
  ActionData<F> p_on_q;
  Bilinear<F> xi1;  // m × q → n
  Bilinear<F> xi2;  // q × m → n

  XModActionData() = default;
  XModActionData(CrossedModule<F> actor, CrossedModule<F> target, ActionData<F> pn, ActionData<F> pq, Bilinear<F> x1,
                 Bilinear<F> x2)
      : actor_xmod(std::move(actor)), target_xmod(std::move(target)), p_on_n(std::move(pn)), p_on_q(std::move(pq)),
        xi1(std::move(x1)), xi2(std::move(x2)) {
    const auto& P = actor_xmod.base();
    const auto& N = target_xmod.top();
    const auto& Q = target_xmod.base();
    if (!(p_on_n.actor == P) || !(p_on_n.target == N)) throw DimensionMismatch("p_on_n must be an action of p on n");
    if (!(p_on_q.actor == P) || !(p_on_q.target == Q)) throw DimensionMismatch("p_on_q must be an action of p on q");
    const auto m = actor_xmod.top().dim(), q = Q.dim(), n = N.dim();
    if (xi1.left_dim() != m || xi1.right_dim() != q || xi1.out_dim() != n)
      throw DimensionMismatch("xi1 must have shape m x q -> n, got " + xi1.shape());
    if (xi2.left_dim() != q || xi2.right_dim() != m || xi2.out_dim() != n)
      throw DimensionMismatch("xi2 must have shape q x m -> n, got " + xi2.shape());
  }

  friend bool operator==(const XModActionData&, const XModActionData&) = default;
};

/// The action of a crossed module on itself: brackets, the action of the base
/// on the top, and ξ₁ = right action, ξ₂ = left action.
template <Field F>
XModActionData<F> self_action(const CrossedModule<F>& x) {
  return {x, x, x.action(), bracket_action(x.base()), x.action().right, x.action().left};
}

/// Which axioms an action must satisfy.
enum class ActionCheck {
  full,
  /// Omits LbM6a, LbM6b and the last action identity (A6) of both p-actions,
  /// none of which is used to build the morphism into the actor.
  forward,
};

template <Field F>
Report<F> validate_xmod_action(const XModActionData<F>& d, ActionCheck mode = ActionCheck::full) {
  Report<F> report;
  report.merge(validate_xmod(d.actor_xmod), "actor.");
  report.merge(validate_xmod(d.target_xmod), "target.");
  report.merge(validate_action(d.p_on_n), "p_on_n.");
  report.merge(validate_action(d.p_on_q), "p_on_q.");

  const auto& X = d.actor_xmod;
  const auto& Y = d.target_xmod;
  const auto& M = X.top();
  const auto& P = X.base();
  const auto& N = Y.top();
  const auto& Q = Y.base();
  const auto& mu = Y.boundary();
  const auto& eta = X.boundary();

  auto pn = [&](const Vector<F>& p, const Vector<F>& n) { return d.p_on_n.act_left(p, n); };
  auto np = [&](const Vector<F>& n, const Vector<F>& p) { return d.p_on_n.act_right(n, p); };
  auto pq = [&](const Vector<F>& p, const Vector<F>& q) { return d.p_on_q.act_left(p, q); };
  auto qp = [&](const Vector<F>& q, const Vector<F>& p) { return d.p_on_q.act_right(q, p); };
  auto qn = [&](const Vector<F>& q, const Vector<F>& n) { return Y.act_left(q, n); };
  auto nq = [&](const Vector<F>& n, const Vector<F>& q) { return Y.act_right(n, q); };
  auto mn = [&](const Vector<F>& m, const Vector<F>& n) { return pn(eta.apply(m), n); };
  auto nm = [&](const Vector<F>& n, const Vector<F>& m) { return np(n, eta.apply(m)); };
  auto mq = [&](const Vector<F>& m, const Vector<F>& q) { return pq(eta.apply(m), q); };
  auto qm = [&](const Vector<F>& q, const Vector<F>& m) { return qp(q, eta.apply(m)); };
  auto pm = [&](const Vector<F>& p, const Vector<F>& m) { return X.act_left(p, m); };
  auto mp = [&](const Vector<F>& m, const Vector<F>& p) { return X.act_right(m, p); };
  auto x1 = [&](const Vector<F>& m, const Vector<F>& q) { return d.xi1.apply(m, q); };
  auto x2 = [&](const Vector<F>& q, const Vector<F>& m) { return d.xi2.apply(q, m); };
  auto sub = [](Vector<F> a, const Vector<F>& b) { return vec::sub<F>(std::move(a), b); };
  auto add = [](Vector<F> a, const Vector<F>& b) { return vec::add<F>(std::move(a), b); };
  auto neg = [](Vector<F> a) { return vec::neg<F>(std::move(a)); };

  const std::size_t dm = M.dim(), dp = P.dim(), dn = N.dim(), dq = Q.dim();
  auto e = [](const LeibnizAlgebra<F>& A, std::size_t i) { return A.basis_vector(i); };

  for (std::size_t a = 0; a < dp; ++a)
    for (std::size_t b = 0; b < dn; ++b) {
      auto p = e(P, a), n = e(N, b);
      report.expect_equal("LbEQ1", {a, b}, mu.apply(pn(p, n)), pq(p, mu.apply(n)));
      report.expect_equal("LbEQ2", {b, a}, mu.apply(np(n, p)), qp(mu.apply(n), p));
    }

  for (std::size_t b = 0; b < dn; ++b)
    for (std::size_t a = 0; a < dp; ++a)
      for (std::size_t c = 0; c < dq; ++c) {
        auto n = e(N, b), p = e(P, a), q = e(Q, c);
        report.expect_equal("LbCOM1", {b, a, c}, nq(n, pq(p, q)), sub(nq(np(n, p), q), np(nq(n, q), p)));
        report.expect_equal("LbCOM2", {a, b, c}, pn(p, nq(n, q)), sub(nq(pn(p, n), q), qn(pq(p, q), n)));
        report.expect_equal("LbCOM3", {a, c, b}, pn(p, qn(q, n)), sub(qn(pq(p, q), n), nq(pn(p, n), q)));
        report.expect_equal("LbCOM4", {b, c, a}, nq(n, qp(q, p)), sub(np(nq(n, q), p), nq(np(n, p), q)));
        report.expect_equal("LbCOM5", {c, b, a}, qn(q, np(n, p)), sub(np(qn(q, n), p), qn(qp(q, p), n)));
        report.expect_equal("LbCOM6", {c, a, b}, qn(q, pn(p, n)), sub(qn(qp(q, p), n), np(qn(q, n), p)));
      }

  for (std::size_t c = 0; c < dq; ++c)
    for (std::size_t b = 0; b < dm; ++b) {
      auto q = e(Q, c), m = e(M, b);
      report.expect_equal("LbM1a", {c, b}, mu.apply(x2(q, m)), qm(q, m));
      report.expect_equal("LbM1b", {b, c}, mu.apply(x1(m, q)), mq(m, q));
    }
  for (std::size_t c = 0; c < dn; ++c)
    for (std::size_t b = 0; b < dm; ++b) {
      auto n = e(N, c), m = e(M, b);
      report.expect_equal("LbM2a", {c, b}, x2(mu.apply(n), m), nm(n, m));
      report.expect_equal("LbM2b", {b, c}, x1(m, mu.apply(n)), mn(m, n));
    }
  for (std::size_t c = 0; c < dq; ++c)
    for (std::size_t a = 0; a < dp; ++a)
      for (std::size_t b = 0; b < dm; ++b) {
        auto q = e(Q, c), p = e(P, a), m = e(M, b);
        report.expect_equal("LbM3a", {c, a, b}, x2(q, pm(p, m)), sub(x2(qp(q, p), m), np(x2(q, m), p)));
        report.expect_equal("LbM3b", {a, b, c}, x1(pm(p, m), q), sub(x2(pq(p, q), m), pn(p, x2(q, m))));
        report.expect_equal("LbM3c", {c, b, a}, x2(q, mp(m, p)), sub(np(x2(q, m), p), x2(qp(q, p), m)));
        report.expect_equal("LbM3d", {b, a, c}, x1(mp(m, p), q), sub(np(x1(m, q), p), x1(m, qp(q, p))));
        if (mode == ActionCheck::full) {
          report.expect_equal("LbM6a", {b, a, c}, x1(m, pq(p, q)), neg(x1(m, qp(q, p))));
          report.expect_equal("LbM6b", {a, b, c}, pn(p, x1(m, q)), neg(pn(p, x2(q, m))));
        }
      }
  for (std::size_t c = 0; c < dq; ++c)
    for (std::size_t b = 0; b < dm; ++b)
      for (std::size_t b2 = 0; b2 < dm; ++b2) {
        auto q = e(Q, c), m = e(M, b), m2 = e(M, b2);
        report.expect_equal("LbM4a", {c, b, b2}, x2(q, M.bracket(m, m2)), sub(nm(x2(q, m), m2), nm(x2(q, m2), m)));
        report.expect_equal("LbM4b", {b, b2, c}, x1(M.bracket(m, m2), q), sub(nm(x1(m, q), m2), mn(m, x2(q, m2))));
      }
  for (std::size_t c = 0; c < dq; ++c)
    for (std::size_t c2 = 0; c2 < dq; ++c2)
      for (std::size_t b = 0; b < dm; ++b) {
        auto q = e(Q, c), q2 = e(Q, c2), m = e(M, b);
        report.expect_equal("LbM5a", {c, c2, b}, x2(Q.bracket(q, q2), m), add(nq(x2(q, m), q2), qn(q, x2(q2, m))));
        report.expect_equal("LbM5b", {b, c, c2}, x1(m, Q.bracket(q, q2)), sub(nq(x1(m, q), q2), nq(x1(m, q2), q)));
        report.expect_equal("LbM5c", {c, b, c2}, qn(q, x1(m, q2)), neg(qn(q, x2(q2, m))));
      }

  if (mode == ActionCheck::forward)
    std::erase_if(report.violations,
                  [](const Violation<F>& v) { return v.label == "p_on_n.A6" || v.label == "p_on_q.A6"; });
  return report;
}

/// The morphism (φ, ψ): (m, p, η) → actor(n, q, μ) of an action, with
/// φ(m) = (d_m, D_m), d_m(q) = −ξ₂(q, m), D_m(q) = ξ₁(m, q), and ψ(p) the
/// quadruple (−[·,p], [p,·]) on n and q. No condition on (n, q, μ) is needed.
template <Field F>
XModMorphism<F> morphism_from_action(const XModActionData<F>& d, const Actor<F>& act,
                                     ActionCheck mode = ActionCheck::full) {
  auto report = validate_xmod_action(d, mode);
  if (!report.ok())
    throw PreconditionFailed("morphism_from_action: action data violates " + report.violations.front().label);
  const auto& M = d.actor_xmod.top();
  const auto& P = d.actor_xmod.base();
  const auto& N = d.target_xmod.top();
  const auto& Q = d.target_xmod.base();
  const std::size_t dn = N.dim(), dq = Q.dim();

  Matrix<F> phi(act.top.dim(), M.dim());
  for (std::size_t b = 0; b < M.dim(); ++b) {
    auto m = M.basis_vector(b);
    Matrix<F> dm(dn, dq), Dm(dn, dq);
    for (std::size_t c = 0; c < dq; ++c) {
      auto q = Q.basis_vector(c);
      auto l = vec::neg<F>(d.xi2.apply(q, m));
      auto r = d.xi1.apply(m, q);
      for (std::size_t i = 0; i < dn; ++i) {
        dm(i, c) = l[i];
        Dm(i, c) = r[i];
      }
    }
    auto coords = act.top.coordinates_or_throw(BiderPair<F>{std::move(dm), std::move(Dm)}, "image of a top element");
    for (std::size_t i = 0; i < coords.size(); ++i) phi(i, b) = coords[i];
  }

  Matrix<F> psi(act.base.dim(), P.dim());
  for (std::size_t a = 0; a < P.dim(); ++a) {
    auto p = P.basis_vector(a);
    Matrix<F> s1(dn, dn), t1(dn, dn), s2(dq, dq), t2(dq, dq);
    for (std::size_t j = 0; j < dn; ++j) {
      auto n = N.basis_vector(j);
      auto sv = vec::neg<F>(d.p_on_n.act_right(n, p)), tv = d.p_on_n.act_left(p, n);
      for (std::size_t i = 0; i < dn; ++i) {
        s1(i, j) = sv[i];
        t1(i, j) = tv[i];
      }
    }
    for (std::size_t j = 0; j < dq; ++j) {
      auto q = Q.basis_vector(j);
      auto sv = vec::neg<F>(d.p_on_q.act_right(q, p)), tv = d.p_on_q.act_left(p, q);
      for (std::size_t i = 0; i < dq; ++i) {
        s2(i, j) = sv[i];
        t2(i, j) = tv[i];
      }
    }
    auto coords = act.base.coordinates_or_throw(
        XModBiderQuad<F>{std::move(s1), std::move(t1), std::move(s2), std::move(t2)}, "image of a base element");
    for (std::size_t i = 0; i < coords.size(); ++i) psi(i, a) = coords[i];
  }
  return {d.actor_xmod, act.xmod, std::move(phi), std::move(psi)};
}

template <Field F>
XModMorphism<F> morphism_from_action(const XModActionData<F>& d, ActionCheck mode = ActionCheck::full) {
  return morphism_from_action(d, actor(d.target_xmod), mode);
}

/// Names of the conditions that fail, e.g. "CON1 (Ann(n) != 0), ...".
inline std::string describe_failed_conditions(const ConditionFlags& f) {
  std::string s;
  auto add = [&](bool ok, const char* text) {
    if (ok) return;
    if (!s.empty()) s += "; ";
    s += text;
  };
  add(f.con1, "CON1 fails (Ann(n) = 0 = Ann(q) does not hold)");
  add(f.con2, "CON2 fails (Ann(n) = 0 and [q,q] = q does not hold)");
  add(f.con3, "CON3 fails ([n,n] = n and [q,q] = q does not hold)");
  return s;
}

/// Reads an action of f.source on y off a morphism f into actor(y):
/// [p,n] = θ₁ᵖ(n), [n,p] = −σ₁ᵖ(n), [p,q] = θ₂ᵖ(q), [q,p] = −σ₂ᵖ(q),
/// ξ₁(m,q) = D_m(q), ξ₂(q,m) = −d_m(q). Refuses unless y satisfies a CON condition.
template <Field F>
XModActionData<F> action_from_morphism(const CrossedModule<F>& y, const Actor<F>& act, const XModMorphism<F>& f) {
  auto flags = check_conditions(y);
  if (!flags.any()) throw PreconditionFailed("action_from_morphism: " + describe_failed_conditions(flags));
  if (!(f.target == act.xmod)) throw DimensionMismatch("action_from_morphism: morphism does not land in actor(y)");
  auto report = validate_morphism(f);
  if (!report.ok())
    throw PreconditionFailed("action_from_morphism: not a morphism (" + report.violations.front().label + ")");

  const auto& M = f.source.top();
  const auto& P = f.source.base();
  const std::size_t dn = y.top().dim(), dq = y.base().dim(), dm = M.dim(), dp = P.dim();
  Bilinear<F> pn_l(dp, dn, dn), pn_r(dn, dp, dn), pq_l(dp, dq, dq), pq_r(dq, dp, dq);
  for (std::size_t a = 0; a < dp; ++a) {
    auto B = act.base.element(f.base_map.column(a));
    for (std::size_t j = 0; j < dn; ++j) {
      pn_l.set_product(a, j, B.theta1.column(j));
      pn_r.set_product(j, a, vec::neg<F>(B.sigma1.column(j)));
    }
    for (std::size_t j = 0; j < dq; ++j) {
      pq_l.set_product(a, j, B.theta2.column(j));
      pq_r.set_product(j, a, vec::neg<F>(B.sigma2.column(j)));
    }
  }
  Bilinear<F> xi1(dm, dq, dn), xi2(dq, dm, dn);
  for (std::size_t b = 0; b < dm; ++b) {
    auto pair = act.top.element(f.top_map.column(b));
    for (std::size_t c = 0; c < dq; ++c) {
      xi1.set_product(b, c, pair.D.column(c));
      xi2.set_product(c, b, vec::neg<F>(pair.d.column(c)));
    }
  }
  return {f.source,
          y,
          ActionData<F>(P, y.top(), std::move(pn_l), std::move(pn_r)),
          ActionData<F>(P, y.base(), std::move(pq_l), std::move(pq_r)),
          std::move(xi1),
          std::move(xi2)};
}

template <Field F>
XModActionData<F> action_from_morphism(const CrossedModule<F>& y, const XModMorphism<F>& f) {
  auto flags = check_conditions(y);
  if (!flags.any()) throw PreconditionFailed("action_from_morphism: " + describe_failed_conditions(flags));
  return action_from_morphism(y, actor(y), f);
}

/// The semidirect product with its split extension
/// (n, q, μ) → (n⋊m, q⋊p, (μ,η)) ⇄ (m, p, η).
template <Field F>
struct SemidirectXMod {
  CrossedModule<F> xmod;
  XModMorphism<F> inclusion;
  XModMorphism<F> projection;
  XModMorphism<F> section;
};

template <Field F>
SemidirectXMod<F> semidirect_xmod(const XModActionData<F>& d) {
  auto report = validate_xmod_action(d);
  if (!report.ok())
    throw PreconditionFailed("semidirect_xmod: action data violates " + report.violations.front().label);
  const auto& X = d.actor_xmod;
  const auto& Y = d.target_xmod;
  const auto& eta = X.boundary();
  const std::size_t dm = X.top().dim(), dp = X.base().dim(), dn = Y.top().dim(), dq = Y.base().dim();

  // m acts on n through η.
  Bilinear<F> mn_l(dm, dn, dn), mn_r(dn, dm, dn);
  for (std::size_t b = 0; b < dm; ++b) {
    auto pm = eta.column(b);
    for (std::size_t j = 0; j < dn; ++j) {
      auto n = Y.top().basis_vector(j);
      mn_l.set_product(b, j, d.p_on_n.act_left(pm, n));
      mn_r.set_product(j, b, d.p_on_n.act_right(n, pm));
    }
  }
  auto top = semidirect_algebra(ActionData<F>(X.top(), Y.top(), std::move(mn_l), std::move(mn_r)));
  auto base = semidirect_algebra(d.p_on_q);

  const std::size_t T = dn + dm, B = dq + dp;
  auto split_top = [&](std::size_t i) {
    return i < dn ? std::pair{Y.top().basis_vector(i), vec::zero<F>(dm)}
                  : std::pair{vec::zero<F>(dn), X.top().basis_vector(i - dn)};
  };
  auto split_base = [&](std::size_t i) {
    return i < dq ? std::pair{Y.base().basis_vector(i), vec::zero<F>(dp)}
                  : std::pair{vec::zero<F>(dq), X.base().basis_vector(i - dq)};
  };
  Bilinear<F> left(B, T, T), right(T, B, T);
  for (std::size_t i = 0; i < B; ++i)
    for (std::size_t j = 0; j < T; ++j) {
      auto [q, p] = split_base(i);
      auto [n, m] = split_top(j);
      // [(q,p),(n,m)] = ([q,n] + [p,n] + ξ₂(q,m), [p,m])
      auto l = vec::add<F>(vec::add<F>(Y.act_left(q, n), d.p_on_n.act_left(p, n)), d.xi2.apply(q, m));
      left.set_product(i, j, vec::concat<F>(l, X.act_left(p, m)));
      // [(n,m),(q,p)] = ([n,q] + [n,p] + ξ₁(m,q), [m,p])
      auto r = vec::add<F>(vec::add<F>(Y.act_right(n, q), d.p_on_n.act_right(n, p)), d.xi1.apply(m, q));
      right.set_product(j, i, vec::concat<F>(r, X.act_right(m, p)));
    }
  CrossedModule<F> xm(ActionData<F>(base.algebra, top.algebra, std::move(left), std::move(right)),
                      block_diagonal(Y.boundary(), eta));

  Matrix<F> proj_top(dm, T), proj_base(dp, B);
  for (std::size_t i = 0; i < dm; ++i) proj_top(i, dn + i) = F::from_int(1);
  for (std::size_t i = 0; i < dp; ++i) proj_base(i, dq + i) = F::from_int(1);
  XModMorphism<F> inclusion{Y, xm, top.inclusion_target, base.inclusion_target};
  XModMorphism<F> projection{xm, X, std::move(proj_top), std::move(proj_base)};
  XModMorphism<F> section{X, xm, top.inclusion_actor, base.inclusion_actor};
  return {std::move(xm), std::move(inclusion), std::move(projection), std::move(section)};
}

}  // namespace lbxm

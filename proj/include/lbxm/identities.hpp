/**
 * @file identities.hpp
 * @brief Identities satisfied by biderivations, as executable checks.
 *
 * These are not needed to build anything; they are consequences of the
 * defining equations that the test-suite and the CLI evaluate on basis
 * elements of the computed solution spaces.
 */
#pragma once

#include <string>

#include "lbxm/bider.hpp"

namespace lbxm {

/// For every basis (d, D) of Bider(q, n): (dμ, Dμ) ∈ Bider(n) and (μd, μD) ∈ Bider(q).
template <Field F>
Report<F> check_delta_components(const CrossedModule<F>& x, const PairAlgebra<F>& top) {
  Report<F> report;
  const auto& mu = x.boundary();
  for (std::size_t i = 0; i < top.dim(); ++i) {
    const auto& p = top.basis[i];
    auto rn = bider_residual(x.top(), BiderPair<F>{p.d * mu, p.D * mu});
    auto rq = bider_residual(x.base(), BiderPair<F>{mu * p.d, mu * p.D});
    report.expect_equal("(d.mu,D.mu) in Bider(n)", {i}, rn, vec::zero<F>(rn.size()));
    report.expect_equal("(mu.d,mu.D) in Bider(q)", {i}, rq, vec::zero<F>(rq.size()));
  }
  return report;
}

/// [D₁μd₂(q), q'] = [D₁μD₂(q), q'] and [q, D₁μd₂(q')] = [q, D₁μD₂(q')]
/// for all basis pairs of Bider(q, n) and basis vectors q, q'.
template <Field F>
Report<F> check_pair_identities(const CrossedModule<F>& x, const PairAlgebra<F>& top) {
  Report<F> report;
  const auto& mu = x.boundary();
  const std::size_t nq = x.base().dim();
  for (std::size_t i = 0; i < top.dim(); ++i)
    for (std::size_t j = 0; j < top.dim(); ++j) {
      Matrix<F> Dmd = top.basis[i].D * mu * top.basis[j].d;
      Matrix<F> DmD = top.basis[i].D * mu * top.basis[j].D;
      for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nq; ++b) {
          auto qa = x.base().basis_vector(a), qb = x.base().basis_vector(b);
          report.expect_equal("[D1.mu.d2(q),q']", {i, j, a, b}, x.act_right(Dmd.column(a), qb),
                              x.act_right(DmD.column(a), qb));
          report.expect_equal("[q,D1.mu.d2(q')]", {i, j, a, b}, x.act_left(qa, Dmd.column(b)),
                              x.act_left(qa, DmD.column(b)));
        }
    }
  return report;
}

/// The twelve identities mixing Bider(n, q, μ) with itself and with
/// Bider(q, n), each instantiated on basis elements. Witnesses list the
/// basis indices of the solutions first, then of the vectors.
template <Field F>
Report<F> check_quad_identities(const CrossedModule<F>& x, const PairAlgebra<F>& top, const QuadAlgebra<F>& base) {
  Report<F> report;
  const auto& N = x.top();
  const auto& Q = x.base();
  auto n_ = [&](std::size_t i) { return N.basis_vector(i); };
  auto q_ = [&](std::size_t i) { return Q.basis_vector(i); };

  for (std::size_t s = 0; s < base.dim(); ++s)
    for (std::size_t t = 0; t < top.dim(); ++t) {
      const auto& B = base.basis[s];
      const auto& P = top.basis[t];
      Matrix<F> Ds2 = P.D * B.sigma2, Dt2 = P.D * B.theta2;
      Matrix<F> t1d = B.theta1 * P.d, t1D = B.theta1 * P.D;
      for (std::size_t a = 0; a < Q.dim(); ++a) {
        for (std::size_t b = 0; b < Q.dim(); ++b) {
          report.expect_equal("[D.s2(q),q']", {s, t, a, b}, x.act_right(Ds2.column(a), q_(b)),
                              x.act_right(Dt2.column(a), q_(b)));
          report.expect_equal("[q,D.s2(q')]", {s, t, a, b}, x.act_left(q_(a), Ds2.column(b)),
                              x.act_left(q_(a), Dt2.column(b)));
          report.expect_equal("[t1.d(q),q']", {s, t, a, b}, x.act_right(t1d.column(a), q_(b)),
                              x.act_right(t1D.column(a), q_(b)));
          report.expect_equal("[q,t1.d(q')]", {s, t, a, b}, x.act_left(q_(a), t1d.column(b)),
                              x.act_left(q_(a), t1D.column(b)));
        }
        for (std::size_t c = 0; c < N.dim(); ++c) {
          report.expect_equal("[D.s2(q),n]", {s, t, a, c}, N.bracket(Ds2.column(a), n_(c)),
                              N.bracket(Dt2.column(a), n_(c)));
          report.expect_equal("[n,D.s2(q)]", {s, t, a, c}, N.bracket(n_(c), Ds2.column(a)),
                              N.bracket(n_(c), Dt2.column(a)));
          report.expect_equal("[t1.d(q),n]", {s, t, a, c}, N.bracket(t1d.column(a), n_(c)),
                              N.bracket(t1D.column(a), n_(c)));
          report.expect_equal("[n,t1.d(q)]", {s, t, a, c}, N.bracket(n_(c), t1d.column(a)),
                              N.bracket(n_(c), t1D.column(a)));
        }
      }
    }

  for (std::size_t s = 0; s < base.dim(); ++s)
    for (std::size_t u = 0; u < base.dim(); ++u) {
      const auto& B = base.basis[s];
      const auto& C = base.basis[u];
      Matrix<F> t1s1 = B.theta1 * C.sigma1, t1t1 = B.theta1 * C.theta1;
      Matrix<F> t2s2 = B.theta2 * C.sigma2, t2t2 = B.theta2 * C.theta2;
      for (std::size_t c = 0; c < N.dim(); ++c)
        for (std::size_t a = 0; a < Q.dim(); ++a) {
          report.expect_equal("[t1.s1'(n),q]", {s, u, c, a}, x.act_right(t1s1.column(c), q_(a)),
                              x.act_right(t1t1.column(c), q_(a)));
          report.expect_equal("[q,t1.s1'(n)]", {s, u, a, c}, x.act_left(q_(a), t1s1.column(c)),
                              x.act_left(q_(a), t1t1.column(c)));
          report.expect_equal("[t2.s2'(q),n]", {s, u, a, c}, x.act_left(t2s2.column(a), n_(c)),
                              x.act_left(t2t2.column(a), n_(c)));
          report.expect_equal("[n,t2.s2'(q)]", {s, u, c, a}, x.act_right(n_(c), t2s2.column(a)),
                              x.act_right(n_(c), t2t2.column(a)));
        }
    }
  return report;
}

/// θσ' = θθ' for all pairs of basis biderivations (σ, θ), (σ', θ') of q.
/// Guaranteed when Ann(q) = 0 or [q, q] = q.
template <Field F>
Report<F> check_theta_sigma(const PairAlgebra<F>& bider) {
  Report<F> report;
  for (std::size_t i = 0; i < bider.dim(); ++i)
    for (std::size_t j = 0; j < bider.dim(); ++j)
      expect_equal_columns<F>(report, "theta.sigma'=theta.theta'", bider.basis[i].D * bider.basis[j].d,
                              bider.basis[i].D * bider.basis[j].D, {i, j});
  return report;
}

/// Dσ₂ = Dθ₂ and θ₁d = θ₁D for every basis (d, D) of Bider(q, n) and every
/// basis quadruple. Guaranteed when Ann(n) = 0 or [q, q] = q.
template <Field F>
Report<F> check_mixed_collapse(const PairAlgebra<F>& top, const QuadAlgebra<F>& base) {
  Report<F> report;
  for (std::size_t t = 0; t < top.dim(); ++t)
    for (std::size_t s = 0; s < base.dim(); ++s) {
      const auto& P = top.basis[t];
      const auto& B = base.basis[s];
      expect_equal_columns<F>(report, "D.sigma2=D.theta2", P.D * B.sigma2, P.D * B.theta2, {t, s});
      expect_equal_columns<F>(report, "theta1.d=theta1.D", B.theta1 * P.d, B.theta1 * P.D, {s, t});
    }
  return report;
}

}  // namespace lbxm

/**
 * @file xmod.hpp
 * @brief Crossed modules of Leibniz algebras, their morphisms, and
 *        kernels, images, quotients and centers.
 *
 * A crossed module (m, p, η) is an algebra map η: m → p with an action of
 * p on m such that
 *
 *   η([p,m]) = [p,η(m)],  η([m,p]) = [η(m),p]        (XLb1, equivariance)
 *   [η(m),m'] = [m,m'] = [m,η(m')]                    (XLb2, Peiffer)
 */
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lbxm/action.hpp"

namespace lbxm {

template <Field F>
class CrossedModule {
 public:
  CrossedModule() = default;

  /// `action` is the action of the base on the top; `boundary` maps top → base.
  CrossedModule(ActionData<F> action, Matrix<F> boundary) : action_(std::move(action)), boundary_(std::move(boundary)) {
    if (boundary_.rows() != base().dim() || boundary_.cols() != top().dim())
      throw DimensionMismatch("boundary " + boundary_.shape() + " does not map a " + std::to_string(top().dim()) +
                              "-dimensional top into a " + std::to_string(base().dim()) + "-dimensional base");
  }

  const LeibnizAlgebra<F>& top() const { return action_.target; }
  const LeibnizAlgebra<F>& base() const { return action_.actor; }
  const Matrix<F>& boundary() const { return boundary_; }
  const ActionData<F>& action() const { return action_; }

  Vector<F> boundary_of(std::span<const F> m) const { return boundary_.apply(m); }
  /// [p, m]
  Vector<F> act_left(std::span<const F> p, std::span<const F> m) const { return action_.act_left(p, m); }
  /// [m, p]
  Vector<F> act_right(std::span<const F> m, std::span<const F> p) const { return action_.act_right(m, p); }

  friend bool operator==(const CrossedModule&, const CrossedModule&) = default;

 private:
  ActionData<F> action_;
  Matrix<F> boundary_;
};

/// (n, q, ι) for an ideal n of q, acted on by the restricted bracket.
template <Field F>
CrossedModule<F> ideal_xmod(const LeibnizAlgebra<F>& q, const Subspace<F>& ideal) {
  return {ideal_action(q, ideal), ideal.inclusion()};
}

/// (q, q, id) with the bracket action.
template <Field F>
CrossedModule<F> identity_xmod(const LeibnizAlgebra<F>& q) {
  return {bracket_action(q), Matrix<F>::identity(q.dim())};
}

/// (0, q, 0)
template <Field F>
CrossedModule<F> zero_top_xmod(const LeibnizAlgebra<F>& q) {
  return {zero_action(q, LeibnizAlgebra<F>(0)), Matrix<F>(q.dim(), 0)};
}

/// (0, 0, 0)
template <Field F>
CrossedModule<F> zero_xmod() {
  return zero_top_xmod(LeibnizAlgebra<F>(0));
}

template <Field F>
struct XModMorphism {
  CrossedModule<F> source;
  CrossedModule<F> target;
  Matrix<F> top_map;   // φ
  Matrix<F> base_map;  // ψ

  friend bool operator==(const XModMorphism&, const XModMorphism&) = default;
};

template <Field F>
XModMorphism<F> identity_morphism(const CrossedModule<F>& x) {
  return {x, x, Matrix<F>::identity(x.top().dim()), Matrix<F>::identity(x.base().dim())};
}

template <Field F>
XModMorphism<F> zero_morphism(const CrossedModule<F>& x, const CrossedModule<F>& y) {
  return {x, y, Matrix<F>(y.top().dim(), x.top().dim()), Matrix<F>(y.base().dim(), x.base().dim())};
}

/// g ∘ f
template <Field F>
XModMorphism<F> compose(const XModMorphism<F>& g, const XModMorphism<F>& f) {
  if (!(f.target == g.source)) throw DimensionMismatch("compose: target of f is not the source of g");
  return {f.source, g.target, g.top_map * f.top_map, g.base_map * f.base_map};
}

struct ConditionFlags {
  bool con1 = false;  // Ann(n) = 0 = Ann(q)
  bool con2 = false;  // Ann(n) = 0 and [q,q] = q
  bool con3 = false;  // [n,n] = n and [q,q] = q
  /// [n,n] = n and Ann(q) = 0: enough to recover the p-actions from a morphism
  /// into the actor, but not the ξ-identities. Diagnostic only.
  bool fourth = false;

  bool any() const { return con1 || con2 || con3; }
  friend bool operator==(const ConditionFlags&, const ConditionFlags&) = default;
};

template <Field F>
Report<F> validate_xmod(const CrossedModule<F>& x) {
  Report<F> report;
  report.merge(validate_leibniz(x.top()), "top.");
  report.merge(validate_leibniz(x.base()), "base.");
  report.merge(validate_action(x.action()), "action.");
  report.merge(check_homomorphism(x.top(), x.base(), x.boundary(), "boundary-hom"));

  const std::size_t nm = x.top().dim(), np = x.base().dim();
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nm; ++b) {
      auto p = x.base().basis_vector(a), m = x.top().basis_vector(b);
      report.expect_equal("XLb1-left", {a, b}, x.boundary_of(x.act_left(p, m)), x.base().bracket(p, x.boundary_of(m)));
      report.expect_equal("XLb1-right", {b, a}, x.boundary_of(x.act_right(m, p)),
                          x.base().bracket(x.boundary_of(m), p));
    }
  for (std::size_t b = 0; b < nm; ++b)
    for (std::size_t c = 0; c < nm; ++c) {
      auto m = x.top().basis_vector(b), m2 = x.top().basis_vector(c);
      auto mm = x.top().bracket(m, m2);
      report.expect_equal("XLb2-left", {b, c}, x.act_left(x.boundary_of(m), m2), mm);
      report.expect_equal("XLb2-right", {b, c}, mm, x.act_right(m, x.boundary_of(m2)));
    }
  return report;
}

template <Field F>
Report<F> validate_morphism(const XModMorphism<F>& f) {
  const auto& X = f.source;
  const auto& Y = f.target;
  if (f.top_map.rows() != Y.top().dim() || f.top_map.cols() != X.top().dim() || f.base_map.rows() != Y.base().dim() ||
      f.base_map.cols() != X.base().dim())
    throw DimensionMismatch("morphism maps " + f.top_map.shape() + ", " + f.base_map.shape() +
                            " do not match source and target");
  Report<F> report;
  report.merge(check_homomorphism(X.top(), Y.top(), f.top_map, "top-hom"));
  report.merge(check_homomorphism(X.base(), Y.base(), f.base_map, "base-hom"));
  for (std::size_t b = 0; b < X.top().dim(); ++b) {
    auto m = X.top().basis_vector(b);
    report.expect_equal("boundary-commute", {b}, f.base_map.apply(X.boundary_of(m)),
                        Y.boundary_of(f.top_map.apply(m)));
  }
  for (std::size_t a = 0; a < X.base().dim(); ++a)
    for (std::size_t b = 0; b < X.top().dim(); ++b) {
      auto p = X.base().basis_vector(a), m = X.top().basis_vector(b);
      auto fp = f.base_map.apply(p), fm = f.top_map.apply(m);
      report.expect_equal("action-left", {a, b}, f.top_map.apply(X.act_left(p, m)), Y.act_left(fp, fm));
      report.expect_equal("action-right", {b, a}, f.top_map.apply(X.act_right(m, p)), Y.act_right(fm, fp));
    }
  return report;
}

template <Field F>
ConditionFlags check_conditions(const CrossedModule<F>& x) {
  const bool ann_n = annihilator(x.top()).is_zero();
  const bool ann_q = annihilator(x.base()).is_zero();
  const bool perf_n = is_perfect(x.top());
  const bool perf_q = is_perfect(x.base());
  return {ann_n && ann_q, ann_n && perf_q, perf_n && perf_q, perf_n && ann_q};
}

/// A sub-crossed module given by subspaces of top and base, with its
/// induced structure in the canonical RREF bases.
template <Field F>
struct SubCrossedModule {
  Subspace<F> top;
  Subspace<F> base;
  CrossedModule<F> xmod;
  std::vector<std::string> notes;
};

template <Field F>
SubCrossedModule<F> sub_xmod(const CrossedModule<F>& x, const Subspace<F>& I, const Subspace<F>& J) {
  I.check_ambient(x.top().dim());
  J.check_ambient(x.base().dim());
  auto top = subalgebra(x.top(), I);
  auto base = subalgebra(x.base(), J);
  Matrix<F> boundary(J.dim(), I.dim());
  for (std::size_t r = 0; r < I.dim(); ++r) {
    auto c = J.coordinates(x.boundary_of(I.basis().row(r)));
    if (!c) throw PreconditionFailed("sub_xmod: boundary does not map the top subspace into the base subspace");
    for (std::size_t s = 0; s < J.dim(); ++s) boundary(s, r) = (*c)[s];
  }
  Bilinear<F> left(J.dim(), I.dim(), I.dim()), right(I.dim(), J.dim(), I.dim());
  for (std::size_t s = 0; s < J.dim(); ++s)
    for (std::size_t r = 0; r < I.dim(); ++r) {
      auto l = I.coordinates(x.act_left(J.basis().row(s), I.basis().row(r)));
      auto rr = I.coordinates(x.act_right(I.basis().row(r), J.basis().row(s)));
      if (!l || !rr) throw PreconditionFailed("sub_xmod: action of the base subspace leaves the top subspace");
      left.set_product(s, r, *l);
      right.set_product(r, s, *rr);
    }
  ActionData<F> action(std::move(base.algebra), std::move(top.algebra), std::move(left), std::move(right));
  return {I, J, CrossedModule<F>(std::move(action), std::move(boundary)), {}};
}

/// Crossed-module ideal: ideals I ⊆ n and J ⊆ q with η(I) ⊆ J,
/// [J, n] + [n, J] ⊆ I and [q, I] + [I, q] ⊆ I.
template <Field F>
Report<F> check_xmod_ideal(const CrossedModule<F>& x, const Subspace<F>& I, const Subspace<F>& J) {
  I.check_ambient(x.top().dim());
  J.check_ambient(x.base().dim());
  Report<F> report;
  auto outside = [&](const Subspace<F>& S, const std::string& label, std::vector<std::size_t> w,
                     const Vector<F>& v) {
    if (!S.contains(v)) report.violations.push_back({label, std::move(w), v, {}});
  };
  for (std::size_t r = 0; r < I.dim(); ++r)
    for (std::size_t j = 0; j < x.top().dim(); ++j) {
      auto e = x.top().basis_vector(j);
      outside(I, "top-ideal", {r, j}, x.top().bracket(I.basis().row(r), e));
      outside(I, "top-ideal", {j, r}, x.top().bracket(e, I.basis().row(r)));
    }
  for (std::size_t r = 0; r < J.dim(); ++r)
    for (std::size_t j = 0; j < x.base().dim(); ++j) {
      auto e = x.base().basis_vector(j);
      outside(J, "base-ideal", {r, j}, x.base().bracket(J.basis().row(r), e));
      outside(J, "base-ideal", {j, r}, x.base().bracket(e, J.basis().row(r)));
    }
  for (std::size_t r = 0; r < I.dim(); ++r) outside(J, "boundary", {r}, x.boundary_of(I.basis().row(r)));
  for (std::size_t s = 0; s < J.dim(); ++s)
    for (std::size_t j = 0; j < x.top().dim(); ++j) {
      auto m = x.top().basis_vector(j);
      outside(I, "ideal-acts", {s, j}, x.act_left(J.basis().row(s), m));
      outside(I, "ideal-acts", {j, s}, x.act_right(m, J.basis().row(s)));
    }
  for (std::size_t j = 0; j < x.base().dim(); ++j)
    for (std::size_t r = 0; r < I.dim(); ++r) {
      auto p = x.base().basis_vector(j);
      outside(I, "acted-on", {j, r}, x.act_left(p, I.basis().row(r)));
      outside(I, "acted-on", {r, j}, x.act_right(I.basis().row(r), p));
    }
  return report;
}

template <Field F>
struct QuotientXMod {
  CrossedModule<F> xmod;
  Matrix<F> top_projection;
  Matrix<F> base_projection;
};

template <Field F>
QuotientXMod<F> quotient_xmod(const CrossedModule<F>& x, const Subspace<F>& I, const Subspace<F>& J) {
  auto report = check_xmod_ideal(x, I, J);
  if (!report.ok()) throw PreconditionFailed("quotient_xmod: not a crossed-module ideal (" + report.violations.front().label + ")");
  auto top = quotient_algebra(x.top(), I);
  auto base = quotient_algebra(x.base(), J);
  const std::size_t kt = top.representatives.size(), kb = base.representatives.size();
  auto lift_top = [&](std::size_t s) { return x.top().basis_vector(top.representatives[s]); };
  auto lift_base = [&](std::size_t s) { return x.base().basis_vector(base.representatives[s]); };

  Matrix<F> boundary(kb, kt);
  for (std::size_t s = 0; s < kt; ++s) {
    auto img = base.projection.apply(x.boundary_of(lift_top(s)));
    for (std::size_t t = 0; t < kb; ++t) boundary(t, s) = img[t];
  }
  Bilinear<F> left(kb, kt, kt), right(kt, kb, kt);
  for (std::size_t t = 0; t < kb; ++t)
    for (std::size_t s = 0; s < kt; ++s) {
      left.set_product(t, s, top.projection.apply(x.act_left(lift_base(t), lift_top(s))));
      right.set_product(s, t, top.projection.apply(x.act_right(lift_top(s), lift_base(t))));
    }
  ActionData<F> action(std::move(base.algebra), std::move(top.algebra), std::move(left), std::move(right));
  return {CrossedModule<F>(std::move(action), std::move(boundary)), std::move(top.projection),
          std::move(base.projection)};
}

template <Field F>
SubCrossedModule<F> kernel(const XModMorphism<F>& f) {
  auto report = validate_morphism(f);
  if (!report.ok()) throw PreconditionFailed("kernel: invalid morphism (" + report.violations.front().label + ")");
  return sub_xmod(f.source, nullspace(f.top_map), nullspace(f.base_map));
}

template <Field F>
SubCrossedModule<F> image(const XModMorphism<F>& f) {
  auto report = validate_morphism(f);
  if (!report.ok()) throw PreconditionFailed("image: invalid morphism (" + report.violations.front().label + ")");
  return sub_xmod(f.target, Subspace<F>::column_space(f.top_map), Subspace<F>::column_space(f.base_map));
}

/// n^q = {n : [q,n] = [n,q] = 0 for all q}
template <Field F>
Subspace<F> invariants(const CrossedModule<F>& x) {
  const std::size_t nm = x.top().dim(), np = x.base().dim();
  Matrix<F> stacked(2 * np * nm, nm);
  for (std::size_t a = 0; a < np; ++a)
    for (std::size_t b = 0; b < nm; ++b)
      for (std::size_t k = 0; k < nm; ++k) {
        stacked(a * nm + k, b) = x.action().left.at(a, b, k);
        stacked(np * nm + a * nm + k, b) = x.action().right.at(b, a, k);
      }
  return nullspace(stacked);
}

/// st_q(n) = {q : [q,n] = [n,q] = 0 for all n}
template <Field F>
Subspace<F> stabilizer(const CrossedModule<F>& x) {
  const std::size_t nm = x.top().dim(), np = x.base().dim();
  Matrix<F> stacked(2 * nm * nm, np);
  for (std::size_t b = 0; b < nm; ++b)
    for (std::size_t a = 0; a < np; ++a)
      for (std::size_t k = 0; k < nm; ++k) {
        stacked(b * nm + k, a) = x.action().left.at(a, b, k);
        stacked(nm * nm + b * nm + k, a) = x.action().right.at(b, a, k);
      }
  return nullspace(stacked);
}

/// (n^q, st_q(n) ∩ Z(q), η) with Z(q) taken to be Ann(q). This agrees with
/// the kernel of the canonical morphism into the actor when a CON flag
/// holds; otherwise the same formula is computed and a note is attached.
template <Field F>
SubCrossedModule<F> center(const CrossedModule<F>& x) {
  auto sub = sub_xmod(x, invariants(x), intersection(stabilizer(x), annihilator(x.base())));
  if (!check_conditions(x).any())
    sub.notes.push_back("no CON condition holds; the center is computed with Z(q) = Ann(q), which is only "
                        "known to match the categorical center under CON1-CON3");
  return sub;
}

/// Componentwise direct product of two crossed modules (first factor's basis first).
template <Field F>
CrossedModule<F> direct_product(const CrossedModule<F>& x, const CrossedModule<F>& y) {
  auto top = direct_sum(x.top(), y.top());
  auto base = direct_sum(x.base(), y.base());
  const std::size_t nx = x.top().dim(), ny = y.top().dim(), px = x.base().dim(), py = y.base().dim();
  Bilinear<F> left(px + py, nx + ny, nx + ny), right(nx + ny, px + py, nx + ny);
  for (std::size_t a = 0; a < px; ++a)
    for (std::size_t b = 0; b < nx; ++b) {
      auto l = x.action().left.product(a, b), r = x.action().right.product(b, a);
      left.set_product(a, b, vec::concat<F>(l, vec::zero<F>(ny)));
      right.set_product(b, a, vec::concat<F>(r, vec::zero<F>(ny)));
    }
  for (std::size_t a = 0; a < py; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      auto l = y.action().left.product(a, b), r = y.action().right.product(b, a);
      left.set_product(px + a, nx + b, vec::concat<F>(vec::zero<F>(nx), l));
      right.set_product(nx + b, px + a, vec::concat<F>(vec::zero<F>(nx), r));
    }
  return {ActionData<F>(std::move(base), std::move(top), std::move(left), std::move(right)),
          block_diagonal(x.boundary(), y.boundary())};
}

}  // namespace lbxm

/**
 * @file catalog.hpp
 * @brief Built-in fixtures: small algebras, crossed modules, actions and an
 *        exact sequence. Every entry is validated when it is loaded.
 *
 * All structure constants are integers, so every entry makes sense over any
 * of the supported fields.
 */
#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

#include "lbxm/sequence.hpp"
#include "lbxm/xaction.hpp"

namespace lbxm {

template <Field F>
struct CatalogEntry {
  std::string id;
  std::string note;
  std::variant<LeibnizAlgebra<F>, CrossedModule<F>, XModActionData<F>, ShortExactSequence<F>> payload;
  /// Action data that satisfies only the axioms needed for the morphism into
  /// the actor (see ActionCheck::forward); validated in that mode.
  bool forward_only = false;

  std::string kind() const {
    switch (payload.index()) {
      case 0: return "algebra";
      case 1: return "xmod";
      case 2: return "xaction";
      default: return "sequence";
    }
  }
};

namespace catalog_detail {

using Entry = std::tuple<std::size_t, std::size_t, std::size_t, long long>;

template <Field F>
LeibnizAlgebra<F> algebra(std::size_t dim, std::vector<std::string> names, std::initializer_list<Entry> sc) {
  Bilinear<F> b(dim, dim, dim);
  for (auto [i, j, k, c] : sc) b.at(i, j, k) = F::from_int(c);
  return LeibnizAlgebra<F>(std::move(b), std::move(names));
}

template <Field F>
LeibnizAlgebra<F> abelian(std::size_t dim) {
  return LeibnizAlgebra<F>(dim);
}

template <Field F>
LeibnizAlgebra<F> L2() {
  return algebra<F>(2, {"e1", "e2"}, {{0, 0, 1, 1}});
}

template <Field F>
LeibnizAlgebra<F> sl2() {
  // basis e, h, f
  return algebra<F>(3, {"e", "h", "f"},
                    {{0, 2, 1, 1}, {2, 0, 1, -1}, {1, 0, 0, 2}, {0, 1, 0, -2}, {1, 2, 2, -2}, {2, 1, 2, 2}});
}

template <Field F>
LeibnizAlgebra<F> r2() {
  return algebra<F>(2, {"x", "y"}, {{0, 1, 1, 1}, {1, 0, 1, -1}});
}

/// sl2 ⊕ V with V the standard module, [v, x] = −x·v and [x, v] = [v, w] = 0.
template <Field F>
LeibnizAlgebra<F> hemi_sl2() {
  return algebra<F>(5, {"e", "h", "f", "v1", "v2"},
                    {{0, 2, 1, 1}, {2, 0, 1, -1}, {1, 0, 0, 2}, {0, 1, 0, -2}, {1, 2, 2, -2}, {2, 1, 2, 2},
                     // e·v2 = v1, h·v1 = v1, h·v2 = −v2, f·v1 = v2
                     {4, 0, 3, -1}, {3, 1, 3, -1}, {4, 1, 4, 1}, {3, 2, 4, -1}});
}

/// sl2 ⋉ heis3 with p, q the standard module and [p, q] = z.
template <Field F>
LeibnizAlgebra<F> schroedinger() {
  return algebra<F>(6, {"e", "h", "f", "p", "q", "z"},
                    {{0, 2, 1, 1}, {2, 0, 1, -1}, {1, 0, 0, 2}, {0, 1, 0, -2}, {1, 2, 2, -2}, {2, 1, 2, 2},
                     {0, 4, 3, 1}, {4, 0, 3, -1},  // [e, q] = p
                     {1, 3, 3, 1}, {3, 1, 3, -1},  // [h, p] = p
                     {1, 4, 4, -1}, {4, 1, 4, 1},  // [h, q] = −q
                     {2, 3, 4, 1}, {3, 2, 4, -1},  // [f, p] = q
                     {3, 4, 5, 1}, {4, 3, 5, -1}});
}

template <Field F>
Subspace<F> coordinate_span(std::size_t dim, std::initializer_list<std::size_t> indices) {
  std::vector<Vector<F>> vs;
  for (auto i : indices) vs.push_back(vec::unit<F>(dim, i));
  return Subspace<F>::span(dim, vs);
}

/// (A1, A1, id) acting on itself with [p, x] = x, [x, p] = 0, ξ₁ = 1, ξ₂ = 0.
template <Field F>
XModActionData<F> a1_forward_only() {
  auto x = identity_xmod(abelian<F>(1));
  Bilinear<F> left(1, 1, 1), right(1, 1, 1), xi1(1, 1, 1), xi2(1, 1, 1);
  left.at(0, 0, 0) = F::from_int(1);
  xi1.at(0, 0, 0) = F::from_int(1);
  ActionData<F> act(x.base(), x.top(), left, right);
  return {x, x, act, act, xi1, xi2};
}

template <Field F>
ShortExactSequence<F> sl2_a1_sequence() {
  auto x = identity_xmod(sl2<F>());
  auto y = identity_xmod(abelian<F>(1));
  auto mid = direct_product(x, y);
  Matrix<F> inc(4, 3), proj(1, 4);
  for (std::size_t i = 0; i < 3; ++i) inc(i, i) = F::from_int(1);
  proj(0, 3) = F::from_int(1);
  return {{x, mid, inc, inc}, {mid, y, proj, proj}};
}

struct Info {
  const char* id;
  const char* note;
};

inline const std::vector<Info>& table() {
  static const std::vector<Info> t = {
      {"A1", "abelian, dimension 1"},
      {"A2", "abelian, dimension 2"},
      {"L2", "[e1,e1] = e2, all other brackets zero; non-Lie"},
      {"sl2", "basis e, h, f with [e,f] = h, [h,e] = 2e, [h,f] = -2f"},
      {"r2", "two-dimensional non-abelian Lie algebra, [x,y] = y"},
      {"hemi-sl2", "sl2 plus its standard module V with [v,x] = -x.v and [x,v] = 0; non-Lie, perfect, Ann = 0"},
      {"schroedinger", "sl2 acting on the Heisenberg algebra span{p,q,z}; perfect with Ann = span{z}"},
      {"0-q-0-L2", "(0, L2, 0)"},
      {"q-q-id-L2", "(L2, L2, id) with the bracket action"},
      {"n-in-L2", "(span{e2}, L2, inclusion) with the restricted bracket"},
      {"sl2-id", "(sl2, sl2, id); CON1, CON2 and CON3 hold"},
      {"0-q-0-sl2", "(0, sl2, 0)"},
      {"r2-id", "(r2, r2, id), a Lie crossed module satisfying CON1"},
      {"A1-id", "(A1, A1, id), abelian"},
      {"hemi-sl2-id", "(hemi-sl2, hemi-sl2, id)"},
      {"schroedinger-id", "(S, S, id) for the Schroedinger algebra S; only CON3 holds"},
      {"0-q-0-schroedinger", "(0, S, 0); CON2 and CON3 hold, CON1 fails"},
      {"heis-in-schroedinger", "(heis, S, inclusion) for the Heisenberg ideal; no CON condition holds"},
      {"sl2-selfaction", "(sl2, sl2, id) acting on itself by brackets, xi1(m,q) = [m,q], xi2(q,m) = [q,m]"},
      {"r2-selfaction", "(r2, r2, id) acting on itself by brackets"},
      {"A1-forward-only",
       "(A1, A1, id) on itself with [p,x] = x, [x,p] = 0, xi1 = 1, xi2 = 0; fails LbM6a, LbM6b and A6 of both "
       "p-actions but still yields a morphism into the actor"},
      {"sl2-A1-sequence", "0 -> (sl2, sl2, id) -> (sl2 + A1, sl2 + A1, id) -> (A1, A1, id) -> 0"},
  };
  return t;
}

template <Field F>
CatalogEntry<F> build(std::string_view id) {
  std::string note;
  for (const auto& i : table())
    if (id == i.id) note = i.note;
  if (note.empty()) throw ParseError("unknown catalog id '" + std::string(id) + "'");
  CatalogEntry<F> e{std::string(id), note, LeibnizAlgebra<F>(0), false};
  auto L = [&] { return L2<F>(); };
  if (id == "A1") e.payload = abelian<F>(1);
  else if (id == "A2") e.payload = abelian<F>(2);
  else if (id == "L2") e.payload = L();
  else if (id == "sl2") e.payload = sl2<F>();
  else if (id == "r2") e.payload = r2<F>();
  else if (id == "hemi-sl2") e.payload = hemi_sl2<F>();
  else if (id == "schroedinger") e.payload = schroedinger<F>();
  else if (id == "0-q-0-L2") e.payload = zero_top_xmod(L());
  else if (id == "q-q-id-L2") e.payload = identity_xmod(L());
  else if (id == "n-in-L2") e.payload = ideal_xmod(L(), coordinate_span<F>(2, {1}));
  else if (id == "sl2-id") e.payload = identity_xmod(sl2<F>());
  else if (id == "0-q-0-sl2") e.payload = zero_top_xmod(sl2<F>());
  else if (id == "r2-id") e.payload = identity_xmod(r2<F>());
  else if (id == "A1-id") e.payload = identity_xmod(abelian<F>(1));
  else if (id == "hemi-sl2-id") e.payload = identity_xmod(hemi_sl2<F>());
  else if (id == "schroedinger-id") e.payload = identity_xmod(schroedinger<F>());
  else if (id == "0-q-0-schroedinger") e.payload = zero_top_xmod(schroedinger<F>());
  else if (id == "heis-in-schroedinger") e.payload = ideal_xmod(schroedinger<F>(), coordinate_span<F>(6, {3, 4, 5}));
  else if (id == "sl2-selfaction") e.payload = self_action(identity_xmod(sl2<F>()));
  else if (id == "r2-selfaction") e.payload = self_action(identity_xmod(r2<F>()));
  else if (id == "A1-forward-only") {
    e.payload = a1_forward_only<F>();
    e.forward_only = true;
  } else if (id == "sl2-A1-sequence") e.payload = sl2_a1_sequence<F>();
  return e;
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_ids() {
  std::vector<std::string> ids;
  for (const auto& i : catalog_detail::table()) ids.emplace_back(i.id);
  return ids;
}

/// Validator report for an entry of any kind.
template <Field F>
Report<F> validate_entry(const CatalogEntry<F>& e) {
  return std::visit(
      [&](const auto& x) -> Report<F> {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeibnizAlgebra<F>>) return validate_leibniz(x);
        else if constexpr (std::is_same_v<T, CrossedModule<F>>) return validate_xmod(x);
        else if constexpr (std::is_same_v<T, XModActionData<F>>)
          return validate_xmod_action(x, e.forward_only ? ActionCheck::forward : ActionCheck::full);
        else return validate_sequence(x);
      },
      e.payload);
}

template <Field F>
CatalogEntry<F> catalog_load(std::string_view id) {
  auto e = catalog_detail::build<F>(id);
  auto report = validate_entry(e);
  if (!report.ok())
    throw InternalError("catalog entry '" + e.id + "' fails validation over " + F::tag() + " (" +
                        report.violations.front().label + ")");
  return e;
}

}  // namespace lbxm

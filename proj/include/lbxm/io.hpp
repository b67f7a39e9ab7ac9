/**
 * @file io.hpp
 * @brief JSON encoding of every object in the library.
 *
 * Scalars: rationals as strings "a/b" ("/1" omitted), prime-field elements as
 * integers. Both readers also accept the other spelling. Matrices are
 * row-major nested arrays. Bilinear maps use a sparse encoding
 *
 *     [[i, j, [[k, c], ...]], ...]
 *
 * listing only nonzero products in index order. Printing is canonical, so
 * parse(print(x)) == x and print(parse(print(x))) == print(x).
 */
#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lbxm/bider.hpp"
#include "lbxm/sequence.hpp"
#include "lbxm/xaction.hpp"

namespace lbxm::io {

using json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing key \"") + key + "\"");
  return *it;
}

inline std::size_t index(const json& j, const std::string& where) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) fail(where, "expected a non-negative integer");
  if (j.is_number_integer() && j.get<long long>() < 0) fail(where, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline std::size_t bounded(const json& j, std::size_t limit, const std::string& where) {
  auto i = index(j, where);
  if (i >= limit) fail(where, "index " + std::to_string(i) + " out of range (dimension " + std::to_string(limit) + ")");
  return i;
}

}  // namespace detail

template <Field F>
json scalar_to_json(const F& x) {
  if constexpr (std::is_same_v<F, Rational>) return x.to_string();
  else return json(x.value());
}

template <Field F>
F scalar_from_json(const json& j, const std::string& where = "scalar") {
  if (j.is_string()) return F::parse(j.get<std::string>());
  if (j.is_number_integer()) return F::from_int(j.get<long long>());
  if (j.is_number_unsigned()) return F::parse(std::to_string(j.get<std::uint64_t>()));
  detail::fail(where, "expected a scalar (\"a/b\" string or integer)");
}

template <Field F>
json vector_to_json(std::span<const F> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(scalar_to_json(x));
  return a;
}

template <Field F>
Vector<F> vector_from_json(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) detail::fail(where, "expected an array of " + std::to_string(n) + " scalars");
  Vector<F> v;
  v.reserve(n);
  for (const auto& x : j) v.push_back(scalar_from_json<F>(x, where));
  return v;
}

template <Field F>
json matrix_to_json(const Matrix<F>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_to_json<F>(m.row(i)));
  return a;
}

/// The shape is always known from context, so it is checked, never inferred.
template <Field F>
Matrix<F> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array() || j.size() != rows)
    detail::fail(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  Matrix<F> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto r = vector_from_json<F>(j[i], cols, where + " row " + std::to_string(i));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

template <Field F>
json bilinear_to_json(const Bilinear<F>& b) {
  json a = json::array();
  for (std::size_t i = 0; i < b.left_dim(); ++i)
    for (std::size_t j = 0; j < b.right_dim(); ++j) {
      json terms = json::array();
      for (std::size_t k = 0; k < b.out_dim(); ++k)
        if (!b.at(i, j, k).is_zero()) terms.push_back(json::array({k, scalar_to_json(b.at(i, j, k))}));
      if (!terms.empty()) a.push_back(json::array({i, j, std::move(terms)}));
    }
  return a;
}

template <Field F>
Bilinear<F> bilinear_from_json(const json& j, std::size_t l, std::size_t r, std::size_t o, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected a list of [i, j, [[k, c], ...]] entries");
  Bilinear<F> b(l, r, o);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[2].is_array()) detail::fail(where, "malformed entry " + e.dump());
    auto i = detail::bounded(e[0], l, where);
    auto jj = detail::bounded(e[1], r, where);
    if (!seen.insert({i, jj}).second)
      detail::fail(where, "pair (" + std::to_string(i) + ", " + std::to_string(jj) + ") listed twice");
    std::set<std::size_t> ks;
    for (const auto& t : e[2]) {
      if (!t.is_array() || t.size() != 2) detail::fail(where, "malformed term " + t.dump());
      auto k = detail::bounded(t[0], o, where);
      if (!ks.insert(k).second) detail::fail(where, "output index " + std::to_string(k) + " listed twice");
      b.at(i, jj, k) = scalar_from_json<F>(t[1], where);
    }
  }
  return b;
}

template <Field F>
json algebra_to_json(const LeibnizAlgebra<F>& a) {
  json j;
  j["dim"] = a.dim();
  if (!a.names().empty()) j["names"] = a.names();
  j["brackets"] = bilinear_to_json(a.structure());
  return j;
}

template <Field F>
LeibnizAlgebra<F> algebra_from_json(const json& j, const std::string& where = "algebra") {
  auto n = detail::index(detail::member(j, "dim", where), where + ".dim");
  if (n > kMaxDimension) detail::fail(where, "dimension " + std::to_string(n) + " exceeds " + std::to_string(kMaxDimension));
  std::vector<std::string> names;
  if (auto it = j.find("names"); it != j.end()) {
    if (!it->is_array() || it->size() != n) detail::fail(where, "\"names\" must list one string per basis vector");
    for (const auto& s : *it) {
      if (!s.is_string()) detail::fail(where, "\"names\" must be strings");
      names.push_back(s.get<std::string>());
    }
  }
  auto b = bilinear_from_json<F>(detail::member(j, "brackets", where), n, n, n, where + ".brackets");
  return LeibnizAlgebra<F>(std::move(b), std::move(names));
}

template <Field F>
json action_tensors_to_json(const ActionData<F>& a) {
  json j;
  j["left"] = bilinear_to_json(a.left);
  j["right"] = bilinear_to_json(a.right);
  return j;
}

template <Field F>
ActionData<F> action_tensors_from_json(const json& j, const LeibnizAlgebra<F>& p, const LeibnizAlgebra<F>& m,
                                       const std::string& where) {
  auto np = p.dim(), nm = m.dim();
  auto l = bilinear_from_json<F>(detail::member(j, "left", where), np, nm, nm, where + ".left");
  auto r = bilinear_from_json<F>(detail::member(j, "right", where), nm, np, nm, where + ".right");
  return ActionData<F>(p, m, std::move(l), std::move(r));
}

template <Field F>
json action_to_json(const ActionData<F>& a) {
  json j;
  j["actor"] = algebra_to_json(a.actor);
  j["target"] = algebra_to_json(a.target);
  j["left"] = bilinear_to_json(a.left);
  j["right"] = bilinear_to_json(a.right);
  return j;
}

template <Field F>
ActionData<F> action_from_json(const json& j, const std::string& where = "action") {
  auto p = algebra_from_json<F>(detail::member(j, "actor", where), where + ".actor");
  auto m = algebra_from_json<F>(detail::member(j, "target", where), where + ".target");
  return action_tensors_from_json<F>(j, p, m, where);
}

template <Field F>
json xmod_to_json(const CrossedModule<F>& x) {
  json j;
  j["top"] = algebra_to_json(x.top());
  j["base"] = algebra_to_json(x.base());
  j["boundary"] = matrix_to_json(x.boundary());
  j["action"] = action_tensors_to_json(x.action());
  return j;
}

template <Field F>
CrossedModule<F> xmod_from_json(const json& j, const std::string& where = "xmod") {
  auto m = algebra_from_json<F>(detail::member(j, "top", where), where + ".top");
  auto p = algebra_from_json<F>(detail::member(j, "base", where), where + ".base");
  auto eta = matrix_from_json<F>(detail::member(j, "boundary", where), p.dim(), m.dim(), where + ".boundary");
  auto act = action_tensors_from_json<F>(detail::member(j, "action", where), p, m, where + ".action");
  return CrossedModule<F>(std::move(act), std::move(eta));
}

template <Field F>
json morphism_to_json(const XModMorphism<F>& f) {
  json j;
  j["source"] = xmod_to_json(f.source);
  j["target"] = xmod_to_json(f.target);
  j["top_map"] = matrix_to_json(f.top_map);
  j["base_map"] = matrix_to_json(f.base_map);
  return j;
}

template <Field F>
XModMorphism<F> morphism_maps_from_json(const json& j, CrossedModule<F> source, CrossedModule<F> target,
                                        const std::string& where) {
  auto a = matrix_from_json<F>(detail::member(j, "top_map", where), target.top().dim(), source.top().dim(),
                               where + ".top_map");
  auto b = matrix_from_json<F>(detail::member(j, "base_map", where), target.base().dim(), source.base().dim(),
                               where + ".base_map");
  return {std::move(source), std::move(target), std::move(a), std::move(b)};
}

template <Field F>
XModMorphism<F> morphism_from_json(const json& j, const std::string& where = "morphism") {
  auto s = xmod_from_json<F>(detail::member(j, "source", where), where + ".source");
  auto t = xmod_from_json<F>(detail::member(j, "target", where), where + ".target");
  return morphism_maps_from_json<F>(j, std::move(s), std::move(t), where);
}

template <Field F>
json xaction_to_json(const XModActionData<F>& d) {
  json j;
  j["actor_xmod"] = xmod_to_json(d.actor_xmod);
  j["target_xmod"] = xmod_to_json(d.target_xmod);
  j["p_on_n"] = action_tensors_to_json(d.p_on_n);
  j["p_on_q"] = action_tensors_to_json(d.p_on_q);
  j["xi1"] = bilinear_to_json(d.xi1);
  j["xi2"] = bilinear_to_json(d.xi2);
  return j;
}

template <Field F>
XModActionData<F> xaction_from_json(const json& j, const std::string& where = "xaction") {
  auto a = xmod_from_json<F>(detail::member(j, "actor_xmod", where), where + ".actor_xmod");
  auto t = xmod_from_json<F>(detail::member(j, "target_xmod", where), where + ".target_xmod");
  const auto& P = a.base();
  auto pn = action_tensors_from_json<F>(detail::member(j, "p_on_n", where), P, t.top(), where + ".p_on_n");
  auto pq = action_tensors_from_json<F>(detail::member(j, "p_on_q", where), P, t.base(), where + ".p_on_q");
  const auto m = a.top().dim(), q = t.base().dim(), n = t.top().dim();
  auto x1 = bilinear_from_json<F>(detail::member(j, "xi1", where), m, q, n, where + ".xi1");
  auto x2 = bilinear_from_json<F>(detail::member(j, "xi2", where), q, m, n, where + ".xi2");
  return XModActionData<F>(std::move(a), std::move(t), std::move(pn), std::move(pq), std::move(x1), std::move(x2));
}

template <Field F>
json sequence_to_json(const ShortExactSequence<F>& s) {
  json j;
  j["inclusion"] = morphism_to_json(s.inclusion);
  j["projection"] = morphism_to_json(s.projection);
  return j;
}

template <Field F>
ShortExactSequence<F> sequence_from_json(const json& j, const std::string& where = "sequence") {
  return {morphism_from_json<F>(detail::member(j, "inclusion", where), where + ".inclusion"),
          morphism_from_json<F>(detail::member(j, "projection", where), where + ".projection")};
}

template <Field F>
json subspace_to_json(const Subspace<F>& s) {
  json j;
  j["ambient_dim"] = s.ambient_dim();
  j["basis"] = matrix_to_json(s.basis());
  return j;
}

template <Field F>
Subspace<F> subspace_from_json(const json& j, const std::string& where = "subspace") {
  auto n = detail::index(detail::member(j, "ambient_dim", where), where + ".ambient_dim");
  const auto& b = detail::member(j, "basis", where);
  if (!b.is_array()) detail::fail(where, "\"basis\" must be an array of rows");
  std::vector<Vector<F>> rows;
  for (const auto& r : b) rows.push_back(vector_from_json<F>(r, n, where + ".basis"));
  auto s = Subspace<F>::span(n, rows);
  if (s.dim() != rows.size()) detail::fail(where, "basis rows are linearly dependent");
  return s;
}

template <Field F>
json element_to_json(const BiderPair<F>& p) {
  json j;
  j["d"] = matrix_to_json(p.d);
  j["D"] = matrix_to_json(p.D);
  return j;
}

template <Field F>
json element_to_json(const XModBiderQuad<F>& q) {
  json j;
  j["sigma1"] = matrix_to_json(q.sigma1);
  j["theta1"] = matrix_to_json(q.theta1);
  j["sigma2"] = matrix_to_json(q.sigma2);
  j["theta2"] = matrix_to_json(q.theta2);
  return j;
}

template <Field F>
BiderPair<F> pair_from_json(const json& j, std::size_t target, std::size_t source, const std::string& where) {
  return {matrix_from_json<F>(detail::member(j, "d", where), target, source, where + ".d"),
          matrix_from_json<F>(detail::member(j, "D", where), target, source, where + ".D")};
}

template <Field F>
XModBiderQuad<F> quad_from_json(const json& j, std::size_t n, std::size_t q, const std::string& where) {
  return {matrix_from_json<F>(detail::member(j, "sigma1", where), n, n, where + ".sigma1"),
          matrix_from_json<F>(detail::member(j, "theta1", where), n, n, where + ".theta1"),
          matrix_from_json<F>(detail::member(j, "sigma2", where), q, q, where + ".sigma2"),
          matrix_from_json<F>(detail::member(j, "theta2", where), q, q, where + ".theta2")};
}

/// 64-bit FNV-1a of a string, as 16 lowercase hex digits.
inline std::string fnv1a_hex(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

/// Digest of the canonical serialization of the input a construction ran on.
inline std::string digest(const json& canonical_input) { return fnv1a_hex(canonical_input.dump()); }

template <Field F, class Elem>
json bider_algebra_to_json(const BiderAlgebra<F, Elem>& b, const std::string& input_digest) {
  json j;
  j["construction"] = b.construction;
  j["input_digest"] = input_digest;
  j["shape"] = json::array({b.shape_a, b.shape_b});
  j["dim"] = b.dim();
  json basis = json::array();
  for (const auto& e : b.basis) basis.push_back(element_to_json(e));
  j["solution_basis"] = std::move(basis);
  j["as_algebra"] = algebra_to_json(b.as_algebra);
  return j;
}

/// Reads a serialized solution space back. The subspace of solutions is
/// rebuilt from the listed basis, which must already be in canonical form.
template <Field F, class Elem>
BiderAlgebra<F, Elem> bider_algebra_from_json(const json& j, const std::string& where = "bider") {
  BiderAlgebra<F, Elem> b;
  const auto& c = detail::member(j, "construction", where);
  if (!c.is_string()) detail::fail(where, "\"construction\" must be a string");
  b.construction = c.get<std::string>();
  const auto& shape = detail::member(j, "shape", where);
  if (!shape.is_array() || shape.size() != 2) detail::fail(where, "\"shape\" must be [a, b]");
  b.shape_a = detail::index(shape[0], where + ".shape");
  b.shape_b = detail::index(shape[1], where + ".shape");
  const auto& basis = detail::member(j, "solution_basis", where);
  if (!basis.is_array()) detail::fail(where, "\"solution_basis\" must be an array");
  std::vector<Vector<F>> flats;
  for (const auto& e : basis) {
    if constexpr (std::is_same_v<Elem, BiderPair<F>>)
      b.basis.push_back(pair_from_json<F>(e, b.shape_a, b.shape_b, where + ".solution_basis"));
    else
      b.basis.push_back(quad_from_json<F>(e, b.shape_a, b.shape_b, where + ".solution_basis"));
    flats.push_back(b.basis.back().flatten());
  }
  b.solutions = Subspace<F>::span(Elem::unknowns(b.shape_a, b.shape_b), flats);
  for (std::size_t i = 0; i < flats.size(); ++i)
    if (i >= b.solutions.dim() || b.solutions.vector(i) != flats[i])
      detail::fail(where, "solution basis is not in canonical form");
  b.as_algebra = algebra_from_json<F>(detail::member(j, "as_algebra", where), where + ".as_algebra");
  if (b.as_algebra.dim() != b.dim()) detail::fail(where, "as_algebra has the wrong dimension");
  return b;
}

template <Field F>
json violations_to_json(const Report<F>& r) {
  json a = json::array();
  for (const auto& v : r.violations) {
    json e;
    e["label"] = v.label;
    e["witness"] = v.witness;
    e["lhs"] = vector_to_json<F>(v.lhs);
    e["rhs"] = vector_to_json<F>(v.rhs);
    a.push_back(std::move(e));
  }
  return a;
}

/// Object kinds a file can hold.
enum class Kind { algebra, action, xmod, morphism, xaction, sequence };

inline std::string kind_name(Kind k) {
  switch (k) {
    case Kind::algebra: return "algebra";
    case Kind::action: return "action";
    case Kind::xmod: return "xmod";
    case Kind::morphism: return "morphism";
    case Kind::xaction: return "xaction";
    default: return "sequence";
  }
}

/// An explicit "kind" key wins; otherwise the kind follows from the keys present.
inline Kind detect_kind(const json& j) {
  if (!j.is_object()) throw ParseError("input: expected a JSON object");
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw ParseError("input: \"kind\" must be a string");
    auto s = it->get<std::string>();
    for (auto k : {Kind::algebra, Kind::action, Kind::xmod, Kind::morphism, Kind::xaction, Kind::sequence})
      if (kind_name(k) == s) return k;
    throw ParseError("input: unknown kind \"" + s + "\"");
  }
  if (j.contains("xi1")) return Kind::xaction;
  if (j.contains("inclusion")) return Kind::sequence;
  if (j.contains("top_map")) return Kind::morphism;
  if (j.contains("boundary")) return Kind::xmod;
  if (j.contains("actor") && j.contains("left")) return Kind::action;
  if (j.contains("brackets")) return Kind::algebra;
  throw ParseError("input: cannot tell what kind of object this is");
}

}  // namespace lbxm::io

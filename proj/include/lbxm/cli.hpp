/**
 * @file cli.hpp
 * @brief The `lbxm` command-line front end as a library function, so tests
 *        can drive it in-process.
 *
 * One JSON report per invocation goes to the data stream (or to --out);
 * short human-readable lines go to the diagnostic stream. Exit codes:
 * 0 ok, 1 a validation failure or a refused operation, 2 malformed input.
 */
#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lbxm/catalog.hpp"
#include "lbxm/identities.hpp"
#include "lbxm/io.hpp"

namespace lbxm::cli {

using io::json;

inline const std::vector<std::pair<std::string, std::string>>& subcommands() {
  static const std::vector<std::pair<std::string, std::string>> s = {
      {"validate", "check the axioms of any input object"},
      {"ann", "annihilator of an algebra, or of each component of a crossed module"},
      {"comm", "commutator [a,a] and perfectness"},
      {"bider", "biderivation algebra of an algebra, or of each component of a crossed module"},
      {"bider-qn", "Bider(q,n) of a crossed module"},
      {"bider-xmod", "Bider(n,q,mu) of a crossed module"},
      {"actor", "actor crossed module"},
      {"delta", "boundary of the actor and the identities it relies on"},
      {"canonical", "canonical morphism into the actor"},
      {"center", "center of a crossed module"},
      {"conditions", "CON1, CON2, CON3 and the collapse identities they guarantee"},
      {"inner", "inner biderivations: image of the canonical morphism"},
      {"outer", "outer biderivations: actor modulo the inner part"},
      {"semidirect", "semidirect product of an action of algebras (or of the action in a crossed module)"},
      {"semidirect-xmod", "semidirect product of a crossed-module action"},
      {"xaction-validate", "check the crossed-module action axioms"},
      {"xaction-to-morphism", "morphism into the actor induced by an action"},
      {"morphism-to-xaction", "action induced by a morphism into the actor"},
      {"lift", "morphism of a short exact sequence into actor and Out"},
      {"catalog", "list the built-in fixtures or print one"},
  };
  return s;
}

struct Options {
  std::string command;
  std::string in;
  std::string field = "q";
  std::string out;
  std::string id;
  bool forward_only = false;
};

namespace detail {

template <Field F>
struct Outcome {
  json fields = json::object();
  bool ok = true;
  Report<F> report;
};

struct Loaded {
  json doc;
  io::Kind kind;
  bool forward_only = false;
};

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

template <Field F>
json payload_to_json(const CatalogEntry<F>& e) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeibnizAlgebra<F>>) return io::algebra_to_json(x);
        else if constexpr (std::is_same_v<T, CrossedModule<F>>) return io::xmod_to_json(x);
        else if constexpr (std::is_same_v<T, XModActionData<F>>) return io::xaction_to_json(x);
        else return io::sequence_to_json(x);
      },
      e.payload);
}

template <Field F>
Loaded load(const Options& o) {
  if (o.in.empty()) throw ParseError("--in is required for '" + o.command + "'");
  constexpr std::string_view prefix = "catalog:";
  if (o.in.rfind(prefix, 0) == 0) {
    auto e = catalog_load<F>(std::string_view(o.in).substr(prefix.size()));
    Loaded l{payload_to_json(e), io::Kind::algebra, e.forward_only};
    l.kind = io::detect_kind(l.doc);
    return l;
  }
  std::ifstream f(o.in);
  if (!f) throw ParseError("cannot read '" + o.in + "'");
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw ParseError(o.in + ": " + e.what());
  }
  if (doc.is_object() && doc.contains("field")) {
    if (!doc["field"].is_string() || lower(doc["field"].get<std::string>()) != lower(F::tag()))
      throw ParseError("input is over field " + doc["field"].dump() + " but --field selects " + F::tag());
  }
  auto kind = io::detect_kind(doc);
  return {std::move(doc), kind, false};
}

inline void expect_kind(const Loaded& l, std::initializer_list<io::Kind> allowed, const std::string& command) {
  for (auto k : allowed)
    if (l.kind == k) return;
  std::string names;
  for (auto k : allowed) names += (names.empty() ? "" : " or ") + io::kind_name(k);
  throw ParseError("'" + command + "' expects " + names + " input, got " + io::kind_name(l.kind));
}

inline json dims(std::size_t a, std::size_t b) { return json::array({a, b}); }

inline json flags_to_json(const ConditionFlags& c) {
  json j;
  j["con1"] = c.con1;
  j["con2"] = c.con2;
  j["con3"] = c.con3;
  return j;
}

template <Field F>
json sub_xmod_to_json(const SubCrossedModule<F>& s) {
  json j;
  j["dims"] = dims(s.xmod.top().dim(), s.xmod.base().dim());
  j["top"] = io::subspace_to_json(s.top);
  j["base"] = io::subspace_to_json(s.base);
  j["xmod"] = io::xmod_to_json(s.xmod);
  return j;
}

template <Field F>
Report<F> splitting_report(const SemidirectXMod<F>& s) {
  Report<F> r;
  r.merge(validate_xmod(s.xmod), "xmod.");
  r.merge(validate_morphism(s.inclusion), "inclusion.");
  r.merge(validate_morphism(s.projection), "projection.");
  r.merge(validate_morphism(s.section), "section.");
  const auto& X = s.section.source;
  expect_equal_columns<F>(r, "split-top", s.projection.top_map * s.section.top_map,
                          Matrix<F>::identity(X.top().dim()));
  expect_equal_columns<F>(r, "split-base", s.projection.base_map * s.section.base_map,
                          Matrix<F>::identity(X.base().dim()));
  return r;
}

template <Field F>
ActionCheck mode_of(const Options& o, const Loaded& l) {
  return (o.forward_only || l.forward_only) ? ActionCheck::forward : ActionCheck::full;
}

template <Field F>
Outcome<F> run_validate(const Options& o, const Loaded& l) {
  Outcome<F> r;
  r.fields["kind"] = io::kind_name(l.kind);
  switch (l.kind) {
    case io::Kind::algebra: {
      auto a = io::algebra_from_json<F>(l.doc);
      r.fields["dim"] = a.dim();
      r.fields["lie"] = a.is_lie();
      r.report = validate_leibniz(a);
      break;
    }
    case io::Kind::action: r.report = validate_action(io::action_from_json<F>(l.doc)); break;
    case io::Kind::xmod: {
      auto x = io::xmod_from_json<F>(l.doc);
      r.fields["dims"] = dims(x.top().dim(), x.base().dim());
      r.report = validate_xmod(x);
      break;
    }
    case io::Kind::morphism: r.report = validate_morphism(io::morphism_from_json<F>(l.doc)); break;
    case io::Kind::xaction: {
      auto mode = mode_of<F>(o, l);
      r.fields["mode"] = mode == ActionCheck::forward ? "forward" : "full";
      r.report = validate_xmod_action(io::xaction_from_json<F>(l.doc), mode);
      break;
    }
    case io::Kind::sequence: r.report = validate_sequence(io::sequence_from_json<F>(l.doc)); break;
  }
  r.ok = r.report.ok();
  return r;
}

template <Field F, class Fn>
Outcome<F> per_algebra(const Loaded& l, const std::string& command, Fn fn) {
  expect_kind(l, {io::Kind::algebra, io::Kind::xmod}, command);
  Outcome<F> r;
  if (l.kind == io::Kind::algebra) {
    fn(io::algebra_from_json<F>(l.doc), r.fields);
  } else {
    auto x = io::xmod_from_json<F>(l.doc);
    json top, base;
    fn(x.top(), top);
    fn(x.base(), base);
    r.fields["top"] = std::move(top);
    r.fields["base"] = std::move(base);
  }
  return r;
}

template <Field F>
Outcome<F> run_conditions(const CrossedModule<F>& x) {
  Outcome<F> r;
  auto c = check_conditions(x);
  r.fields["conditions"] = flags_to_json(c);
  r.fields["fourth"] = c.fourth;
  json notes = json::array();
  if (!c.any()) notes.push_back(describe_failed_conditions(c));
  if (c.fourth && !c.any())
    notes.push_back("[n,n] = n and Ann(q) = 0: the p-actions can be read off a morphism into the actor, but the "
                    "xi-identities are not guaranteed, so the converse construction still refuses");
  r.fields["notes"] = std::move(notes);
  auto act = actor(x);
  r.report.merge(check_theta_sigma(bider_algebra(x.top())), "n.");
  r.report.merge(check_theta_sigma(bider_algebra(x.base())), "q.");
  r.report.merge(check_mixed_collapse(act.top, act.base), "mixed.");
  r.fields["guaranteed"] = c.any();
  r.fields["collapse_holds"] = r.report.ok();
  r.ok = !c.any() || r.report.ok();
  return r;
}

template <Field F>
Outcome<F> run_command(const Options& o, const Loaded& l) {
  const auto& cmd = o.command;
  using io::Kind;
  if (cmd == "validate") return run_validate<F>(o, l);
  if (cmd == "ann")
    return per_algebra<F>(l, cmd, [](const LeibnizAlgebra<F>& a, json& j) {
      auto s = annihilator(a);
      j["dim"] = s.dim();
      j["annihilator"] = io::subspace_to_json(s);
    });
  if (cmd == "comm")
    return per_algebra<F>(l, cmd, [](const LeibnizAlgebra<F>& a, json& j) {
      auto s = commutator(a);
      j["dim"] = s.dim();
      j["perfect"] = s.dim() == a.dim();
      j["commutator"] = io::subspace_to_json(s);
    });
  if (cmd == "bider")
    return per_algebra<F>(l, cmd, [](const LeibnizAlgebra<F>& a, json& j) {
      auto b = bider_algebra(a);
      j["dim"] = b.dim();
      j["bider"] = io::bider_algebra_to_json(b, io::digest(io::algebra_to_json(a)));
    });

  if (cmd == "semidirect") {
    expect_kind(l, {Kind::action, Kind::xmod}, cmd);
    auto d = l.kind == Kind::action ? io::action_from_json<F>(l.doc) : io::xmod_from_json<F>(l.doc).action();
    auto v = validate_action(d);
    if (!v.ok()) throw PreconditionFailed("semidirect: the action violates " + v.violations.front().label);
    auto s = semidirect_algebra(d);
    Outcome<F> r;
    r.fields["dim"] = s.algebra.dim();
    r.fields["algebra"] = io::algebra_to_json(s.algebra);
    r.fields["inclusion_target"] = io::matrix_to_json(s.inclusion_target);
    r.fields["inclusion_actor"] = io::matrix_to_json(s.inclusion_actor);
    r.fields["projection_actor"] = io::matrix_to_json(s.projection_actor);
    r.report = validate_leibniz(s.algebra);
    r.ok = r.report.ok();
    return r;
  }

  if (cmd == "semidirect-xmod" || cmd == "xaction-validate" || cmd == "xaction-to-morphism") {
    expect_kind(l, {Kind::xaction}, cmd);
    auto d = io::xaction_from_json<F>(l.doc);
    Outcome<F> r;
    if (cmd == "xaction-validate") {
      auto mode = mode_of<F>(o, l);
      r.fields["mode"] = mode == ActionCheck::forward ? "forward" : "full";
      r.report = validate_xmod_action(d, mode);
    } else if (cmd == "xaction-to-morphism") {
      auto mode = mode_of<F>(o, l);
      r.fields["mode"] = mode == ActionCheck::forward ? "forward" : "full";
      auto f = morphism_from_action(d, mode);
      r.fields["actor_dims"] = dims(f.target.top().dim(), f.target.base().dim());
      r.fields["top_map"] = io::matrix_to_json(f.top_map);
      r.fields["base_map"] = io::matrix_to_json(f.base_map);
      r.report = validate_morphism(f);
    } else {
      auto s = semidirect_xmod(d);
      r.fields["dims"] = dims(s.xmod.top().dim(), s.xmod.base().dim());
      r.fields["xmod"] = io::xmod_to_json(s.xmod);
      r.fields["section_top"] = io::matrix_to_json(s.section.top_map);
      r.fields["section_base"] = io::matrix_to_json(s.section.base_map);
      r.report = splitting_report(s);
    }
    r.ok = r.report.ok();
    return r;
  }

  if (cmd == "morphism-to-xaction") {
    CrossedModule<F> y;
    std::optional<XModMorphism<F>> f;
    auto act_holder = std::optional<Actor<F>>();
    std::optional<XModActionData<F>> original;
    if (l.kind == Kind::xaction) {
      original = io::xaction_from_json<F>(l.doc);
      y = original->target_xmod;
      act_holder = actor(y);
      f = morphism_from_action(*original, *act_holder, mode_of<F>(o, l));
    } else if (l.kind == Kind::xmod) {
      y = io::xmod_from_json<F>(l.doc);
      act_holder = actor(y);
      f = canonical_morphism(y, *act_holder);
    } else if (l.doc.is_object() && l.doc.contains("target_xmod")) {
      y = io::xmod_from_json<F>(l.doc["target_xmod"], "target_xmod");
      act_holder = actor(y);
      auto src = io::xmod_from_json<F>(io::detail::member(l.doc, "source", "input"), "source");
      f = io::morphism_maps_from_json<F>(l.doc, std::move(src), act_holder->xmod, "input");
    } else {
      throw ParseError("'morphism-to-xaction' expects an xmod, an xaction, or {target_xmod, source, top_map, base_map}");
    }
    auto d = action_from_morphism(y, *act_holder, *f);
    Outcome<F> r;
    r.fields["conditions"] = flags_to_json(act_holder->conditions);
    r.fields["xaction"] = io::xaction_to_json(d);
    r.report = validate_xmod_action(d);
    if (original) {
      r.fields["round_trip"] = d == *original;
      if (!(d == *original)) r.report.violations.push_back({"round-trip", {}, {}, {}});
    }
    r.ok = r.report.ok();
    return r;
  }

  if (cmd == "lift") {
    expect_kind(l, {Kind::sequence}, cmd);
    auto s = io::sequence_from_json<F>(l.doc);
    auto lift = lift_sequence(s);
    Outcome<F> r;
    r.fields["actor_dims"] = dims(lift.actor.top.dim(), lift.actor.base.dim());
    r.fields["outer_dims"] = dims(lift.outer.xmod.top().dim(), lift.outer.xmod.base().dim());
    r.fields["alpha"] = io::matrix_to_json(lift.alpha_beta.top_map);
    r.fields["beta"] = io::matrix_to_json(lift.alpha_beta.base_map);
    r.fields["induced_top"] = io::matrix_to_json(lift.induced.top_map);
    r.fields["induced_base"] = io::matrix_to_json(lift.induced.base_map);
    r.report = lift.diagram;
    r.ok = r.report.ok();
    return r;
  }

  // Everything else takes a crossed module.
  expect_kind(l, {Kind::xmod}, cmd);
  auto x = io::xmod_from_json<F>(l.doc);
  auto input_digest = io::digest(io::xmod_to_json(x));
  Outcome<F> r;
  if (cmd == "bider-qn") {
    auto b = bider_qn(x);
    r.fields["dim"] = b.dim();
    r.fields["bider"] = io::bider_algebra_to_json(b, input_digest);
  } else if (cmd == "bider-xmod") {
    auto b = bider_xmod(x);
    r.fields["dim"] = b.dim();
    r.fields["bider"] = io::bider_algebra_to_json(b, input_digest);
  } else if (cmd == "conditions") {
    return run_conditions(x);
  } else {
    auto act = actor(x);
    r.fields["actor_dims"] = dims(act.top.dim(), act.base.dim());
    r.fields["conditions"] = flags_to_json(act.conditions);
    if (cmd == "actor") {
      r.fields["actor"] = io::xmod_to_json(act.xmod);
      r.report = validate_xmod(act.xmod);
    } else if (cmd == "delta") {
      r.fields["delta"] = io::matrix_to_json(act.xmod.boundary());
      r.report.merge(check_delta_components(x, act.top), "components.");
      r.report.merge(check_pair_identities(x, act.top), "pair.");
      r.report.merge(check_quad_identities(x, act.top, act.base), "quad.");
    } else if (cmd == "canonical") {
      auto f = canonical_morphism(x, act);
      r.fields["top_map"] = io::matrix_to_json(f.top_map);
      r.fields["base_map"] = io::matrix_to_json(f.base_map);
      r.report = validate_morphism(f);
    } else if (cmd == "center") {
      auto z = center(x);
      r.fields["center"] = sub_xmod_to_json(z);
      r.fields["notes"] = z.notes;
      if (act.conditions.any()) {
        auto k = kernel(canonical_morphism(x, act));
        bool same = k.top == z.top && k.base == z.base;
        r.fields["equals_kernel"] = same;
        if (!same) r.report.violations.push_back({"center=kernel", {}, {}, {}});
      }
    } else if (cmd == "inner") {
      r.fields["inner"] = sub_xmod_to_json(inner_xmod(x, act));
    } else if (cmd == "outer") {
      auto q = outer_xmod(x, act);
      r.fields["dims"] = dims(q.xmod.top().dim(), q.xmod.base().dim());
      r.fields["xmod"] = io::xmod_to_json(q.xmod);
      r.fields["top_projection"] = io::matrix_to_json(q.top_projection);
      r.fields["base_projection"] = io::matrix_to_json(q.base_projection);
    } else {
      throw ParseError("unknown subcommand '" + cmd + "'");
    }
  }
  r.ok = r.report.ok();
  return r;
}

template <Field F>
Outcome<F> run_catalog(const Options& o) {
  Outcome<F> r;
  if (o.id.empty()) {
    json entries = json::array();
    for (const auto& id : catalog_ids()) {
      auto e = catalog_detail::build<F>(id);
      json j;
      j["id"] = id;
      j["kind"] = e.kind();
      j["note"] = e.note;
      entries.push_back(std::move(j));
    }
    r.fields["entries"] = std::move(entries);
    return r;
  }
  auto e = catalog_load<F>(o.id);
  r.fields["id"] = e.id;
  r.fields["kind"] = e.kind();
  r.fields["note"] = e.note;
  r.fields["forward_only"] = e.forward_only;
  r.fields["payload"] = payload_to_json(e);
  return r;
}

template <Field F>
int dispatch(const Options& o, std::ostream& out, std::ostream& err) {
  json report;
  report["command"] = o.command;
  report["input"] = o.command == "catalog" ? (o.id.empty() ? json(nullptr) : json("catalog:" + o.id)) : json(o.in);
  report["field"] = F::tag();
  int code = 0;
  try {
    Outcome<F> r = o.command == "catalog" ? run_catalog<F>(o) : run_command<F>(o, load<F>(o));
    report["ok"] = r.ok;
    for (auto& [k, v] : r.fields.items()) report[k] = v;
    report["violations"] = io::violations_to_json(r.report);
    code = r.ok ? 0 : 1;
    err << o.command << ": " << (r.ok ? "ok" : "FAILED") << " (" << r.report.violations.size() << " violations)\n";
  } catch (const PreconditionFailed& e) {
    report["ok"] = false;
    report["error"] = e.what();
    report["violations"] = json::array();
    code = 1;
    err << o.command << ": refused: " << e.what() << "\n";
  } catch (const InternalError& e) {
    report["ok"] = false;
    report["error"] = e.what();
    report["violations"] = json::array();
    code = 1;
    err << o.command << ": internal error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << o.command << ": malformed input: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << o.command << ": malformed input: " << e.what() << "\n";
    return 2;
  }
  auto text = report.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) {
      err << "cannot write '" << o.out << "'\n";
      return 2;
    }
  }
  return code;
}

}  // namespace detail

/// Runs one invocation. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with Leibniz algebras and their crossed modules.", "lbxm"};
  app.require_subcommand(1, 1);
  for (const auto& [name, help] : subcommands()) {
    auto* sc = app.add_subcommand(name, help);
    if (name == "catalog") {
      sc->add_option("--id", o.id, "fixture id; omit to list all");
    } else {
      sc->add_option("--in", o.in, "input file, or catalog:<id>")->required();
    }
    sc->add_option("--field", o.field, "ground field")->check(CLI::IsMember({"q", "f2", "f3"}));
    sc->add_option("--out", o.out, "write the report here instead of standard output");
    if (name == "validate" || name == "xaction-validate" || name == "xaction-to-morphism" || name == "morphism-to-xaction")
      sc->add_flag("--forward-only", o.forward_only, "check only the action axioms the morphism needs");
  }

  std::vector<const char*> argv{"lbxm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.field == "f2") return detail::dispatch<F2>(o, out, err);
  if (o.field == "f3") return detail::dispatch<F3>(o, out, err);
  return detail::dispatch<Rational>(o, out, err);
}

}  // namespace lbxm::cli

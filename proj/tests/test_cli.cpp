#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lbxm/cli.hpp"

using namespace lbxm;
using io::json;
using Q = Rational;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  auto dir = std::filesystem::temp_directory_path() / "lbxm_test_cli";
  std::filesystem::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

template <Field F>
json round_trip(const CatalogEntry<F>& e) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LeibnizAlgebra<F>>) {
          auto back = io::algebra_from_json<F>(io::algebra_to_json(x));
          EXPECT_EQ(back, x);
          EXPECT_EQ(back.names(), x.names());
          return io::algebra_to_json(back);
        } else if constexpr (std::is_same_v<T, CrossedModule<F>>) {
          auto back = io::xmod_from_json<F>(io::xmod_to_json(x));
          EXPECT_EQ(back, x);
          return io::xmod_to_json(back);
        } else if constexpr (std::is_same_v<T, XModActionData<F>>) {
          auto back = io::xaction_from_json<F>(io::xaction_to_json(x));
          EXPECT_EQ(back, x);
          return io::xaction_to_json(back);
        } else {
          auto back = io::sequence_from_json<F>(io::sequence_to_json(x));
          EXPECT_EQ(back.inclusion, x.inclusion);
          EXPECT_EQ(back.projection, x.projection);
          return io::sequence_to_json(back);
        }
      },
      e.payload);
}

template <Field F>
void round_trip_catalog() {
  for (const auto& id : catalog_ids()) {
    auto e = catalog_load<F>(id);
    SCOPED_TRACE(id);
    EXPECT_EQ(round_trip(e), cli::detail::payload_to_json(e));
  }
}

}  // namespace

TEST(IO, CatalogRoundTripsOverEveryField) {
  round_trip_catalog<Q>();
  round_trip_catalog<F2>();
  round_trip_catalog<F3>();
}

TEST(IO, ScalarSpellings) {
  EXPECT_EQ(io::scalar_to_json(Q(-3) / Q(2)), json("-3/2"));
  EXPECT_EQ(io::scalar_to_json(Q(4)), json("4"));
  EXPECT_EQ(io::scalar_to_json(F3(2)), json(2));
  EXPECT_EQ(io::scalar_from_json<Q>(json(5)), Q(5));
  EXPECT_EQ(io::scalar_from_json<F3>(json("2")), F3(2));
  EXPECT_THROW(io::scalar_from_json<Q>(json("1/0")), ParseError);
  EXPECT_THROW(io::scalar_from_json<Q>(json(true)), ParseError);
}

TEST(IO, SparseBracketsListOnlyNonzeroEntries) {
  auto L2 = catalog_detail::L2<Q>();
  auto j = io::algebra_to_json(L2);
  EXPECT_EQ(j["brackets"].dump(), R"([[0,0,[[1,"1"]]]])");
}

TEST(IO, MalformedAlgebrasAreRejected) {
  auto parse = [](const char* text) { return io::algebra_from_json<Q>(json::parse(text)); };
  EXPECT_THROW(parse(R"({"dim":2,"brackets":[[0,2,[[0,"1"]]]]})"), ParseError);
  EXPECT_THROW(parse(R"({"dim":2,"brackets":[[0,0,[[1,"1"]]],[0,0,[[0,"1"]]]]})"), ParseError);
  EXPECT_THROW(parse(R"({"dim":2,"brackets":[[0,0,[[1,"1"],[1,"2"]]]]})"), ParseError);
  EXPECT_THROW(parse(R"({"dim":2,"brackets":[[0,0,[[1,"x"]]]]})"), ParseError);
  EXPECT_THROW(parse(R"({"brackets":[]})"), ParseError);
  EXPECT_THROW(parse(R"({"dim":65,"brackets":[]})"), ParseError);
}

TEST(IO, BiderAlgebraRoundTrip) {
  auto b = bider_algebra(catalog_detail::L2<Q>());
  auto j = io::bider_algebra_to_json(b, "0000");
  auto back = io::bider_algebra_from_json<Q, BiderPair<Q>>(j);
  EXPECT_EQ(back.basis, b.basis);
  EXPECT_EQ(back.as_algebra, b.as_algebra);
  EXPECT_EQ(back.solutions, b.solutions);

  auto x = std::get<CrossedModule<Q>>(catalog_load<Q>("n-in-L2").payload);
  auto q = bider_xmod(x);
  auto qback = io::bider_algebra_from_json<Q, XModBiderQuad<Q>>(io::bider_algebra_to_json(q, "0000"));
  EXPECT_EQ(qback.basis, q.basis);
  EXPECT_EQ(qback.as_algebra, q.as_algebra);
}

TEST(IO, DetectKind) {
  using io::Kind;
  EXPECT_EQ(io::detect_kind(json::parse(R"({"dim":1,"brackets":[]})")), Kind::algebra);
  for (const auto& id : catalog_ids()) {
    auto e = catalog_load<Q>(id);
    EXPECT_EQ(io::kind_name(io::detect_kind(cli::detail::payload_to_json(e))), e.kind()) << id;
  }
  EXPECT_EQ(io::detect_kind(json::parse(R"({"kind":"algebra","top_map":[]})")), Kind::algebra);
  EXPECT_THROW(io::detect_kind(json::parse(R"({"nothing":1})")), ParseError);
  EXPECT_THROW(io::detect_kind(json::parse("[1,2]")), ParseError);
}

TEST(IO, DigestIsStable) {
  EXPECT_EQ(io::fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(io::fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Cli, CatalogListing) {
  auto r = run({"catalog"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["entries"].size(), catalog_ids().size());
  EXPECT_EQ(j["ok"], true);
}

TEST(Cli, ValidateCatalogEntries) {
  for (const auto& id : catalog_ids()) {
    auto r = run({"validate", "--in", "catalog:" + id});
    EXPECT_EQ(r.code, 0) << id << "\n" << r.err;
  }
}

TEST(Cli, ReportShape) {
  auto r = run({"actor", "--in", "catalog:n-in-L2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  std::vector<std::string> keys;
  for (auto& [k, v] : j.items()) keys.push_back(k);
  ASSERT_GE(keys.size(), 5u);
  EXPECT_EQ(keys[0], "command");
  EXPECT_EQ(keys[1], "input");
  EXPECT_EQ(keys[2], "field");
  EXPECT_EQ(keys[3], "ok");
  EXPECT_EQ(keys.back(), "violations");
}

TEST(Cli, FileInputMatchesCatalogInput) {
  auto e = catalog_load<Q>("sl2-id");
  auto p = temp_file("sl2-id.json", cli::detail::payload_to_json(e).dump());
  auto a = run({"bider-xmod", "--in", p.string()});
  auto b = run({"bider-xmod", "--in", "catalog:sl2-id"});
  ASSERT_EQ(a.code, 0);
  auto ja = json::parse(a.out), jb = json::parse(b.out);
  ja.erase("input");
  jb.erase("input");
  EXPECT_EQ(ja, jb);
}

TEST(Cli, FieldMismatchIsMalformed) {
  auto p = temp_file("f2.json", R"({"field":"F2","dim":1,"brackets":[]})");
  auto r = run({"validate", "--in", p.string(), "--field", "q"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run({"validate", "--in", p.string(), "--field", "f2"}).code, 0);
}

TEST(Cli, MalformedInputExitsTwoWithoutReport) {
  auto bad = temp_file("bad.json", R"({"dim":2,"brackets":[[0,7,[[0,"1"]]]]})");
  auto r = run({"validate", "--in", bad.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("malformed"), std::string::npos);

  auto text = temp_file("text.json", "not json");
  EXPECT_EQ(run({"validate", "--in", text.string()}).code, 2);
  EXPECT_EQ(run({"validate", "--in", "/nonexistent/x.json"}).code, 2);
  EXPECT_EQ(run({"actor", "--in", "catalog:L2"}).code, 2);
  EXPECT_EQ(run({"validate", "--in", "catalog:no-such-id"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate"}).code, 2);
  EXPECT_EQ(run({"validate", "--in", "catalog:L2", "--field", "f5"}).code, 2);
}

TEST(Cli, ValidationFailureExitsOne) {
  // [e,e] = e: the Leibniz identity reads e = 2e.
  auto p = temp_file("idempotent.json", R"({"dim":1,"brackets":[[0,0,[[0,"1"]]]]})");
  auto r = run({"validate", "--in", p.string()});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["ok"], false);
  ASSERT_FALSE(j["violations"].empty());
  EXPECT_TRUE(j["violations"][0].contains("witness"));
}

TEST(Cli, RefusalExitsOneWithError) {
  auto r = run({"morphism-to-xaction", "--in", "catalog:q-q-id-L2"});
  EXPECT_EQ(r.code, 1);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["ok"], false);
  EXPECT_TRUE(j.contains("error"));
}

TEST(Cli, ForwardOnlyFlag) {
  auto e = catalog_load<Q>("A1-forward-only");
  EXPECT_TRUE(e.forward_only);
  auto p = temp_file("forward.json", cli::detail::payload_to_json(e).dump());
  EXPECT_EQ(run({"xaction-validate", "--in", p.string()}).code, 1);
  EXPECT_EQ(run({"xaction-validate", "--in", p.string(), "--forward-only"}).code, 0);
  EXPECT_EQ(run({"xaction-validate", "--in", "catalog:A1-forward-only"}).code, 0);
  EXPECT_EQ(run({"xaction-to-morphism", "--in", p.string(), "--forward-only"}).code, 0);
}

TEST(Cli, OutFileReceivesTheReport) {
  auto dir = std::filesystem::temp_directory_path() / "lbxm_test_cli";
  std::filesystem::create_directories(dir);
  auto target = dir / "report.json";
  std::filesystem::remove(target);
  auto r = run({"center", "--in", "catalog:n-in-L2", "--out", target.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(target);
  auto j = json::parse(f);
  EXPECT_EQ(j["command"], "center");
}

TEST(Cli, EverySubcommandRunsOnSomeFixture) {
  const std::map<std::string, std::string> fixture{
      {"semidirect", "n-in-L2"},          {"semidirect-xmod", "sl2-selfaction"}, {"xaction-validate", "r2-selfaction"},
      {"xaction-to-morphism", "sl2-selfaction"}, {"morphism-to-xaction", "sl2-selfaction"}, {"lift", "sl2-A1-sequence"},
  };
  for (const auto& [name, help] : cli::subcommands()) {
    if (name == "catalog") continue;
    auto it = fixture.find(name);
    auto id = it == fixture.end() ? std::string("n-in-L2") : it->second;
    if (name == "conditions" || name == "outer" || name == "inner") id = "sl2-id";
    auto r = run({name, "--in", "catalog:" + id});
    EXPECT_EQ(r.code, 0) << name << " on " << id << "\n" << r.err;
    EXPECT_EQ(json::parse(r.out)["command"], name);
  }
}

TEST(Cli, PrimeFieldOutput) {
  auto r = run({"bider", "--in", "catalog:L2", "--field", "f3"});
  ASSERT_EQ(r.code, 0);
  auto j = json::parse(r.out);
  EXPECT_EQ(j["field"], "F3");
}

TEST(Cli, HelpExitsZero) {
  auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bider-xmod"), std::string::npos);
}

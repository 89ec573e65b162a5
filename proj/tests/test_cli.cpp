#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "seplen/cli.hpp"
#include "support.hpp"

using namespace seplen;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "seplen");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, Lc) {
  const auto r = run({"lc", "--dims", "2,4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "8\n");
  const auto j = json::parse(run({"lc", "--dims", "2,2,2", "--format", "json"}).out);
  EXPECT_EQ(j["l_c"], 10);
  EXPECT_EQ(j["l_c_equals_d"], false);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"lc", "--dims", "2,1"}).code, 2);
  EXPECT_EQ(run({"lc"}).code, 2);
  EXPECT_EQ(run({"nope"}).code, 2);
  EXPECT_EQ(run({"rank", "--dims", "2,2", "--backend", "quantum"}).code, 2);
  EXPECT_EQ(run({"twoxn", "--n", "2", "--a", "1,2"}).code, 2);
  EXPECT_EQ(run({"twoxn", "--n", "3", "--a", "1,2", "--b", "3,5"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "--point", "/nonexistent.json"}).code, 2);
}

TEST(Cli, VerifyCritical) {
  const auto r = run({"verify-critical", "--dims", "2,2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("confirmed"), std::string::npos);
  const auto capped = run({"verify-critical", "--dims", "3,4", "--cap", "100"});
  EXPECT_EQ(capped.code, 2);
  EXPECT_NE(capped.err.find("cap"), std::string::npos);
}

TEST(Cli, TwoXN) {
  const auto r = run({"twoxn", "--n", "2", "--a", "1,2", "--b", "3,5", "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["closed_form"], "86528");
  EXPECT_EQ(j["det_msharp"], "-86528");
  EXPECT_EQ(j["passed"], true);
  EXPECT_EQ(run({"twoxn", "--n", "3", "--seed", "5"}).code, 0);
}

TEST(Cli, RankAndFiltration) {
  const auto r = json::parse(run({"rank", "--dims", "2,3", "--r", "5", "--format", "json"}).out);
  EXPECT_EQ(r["generic_rank"], 34);
  EXPECT_EQ(r["samples"].size(), 3u);
  const auto f = json::parse(run({"filtration-dims", "--dims", "2,3", "--r", "5,6", "--format", "json"}).out);
  EXPECT_EQ(f["entries"][0]["dim"], 33);
  EXPECT_EQ(f["entries"][1]["dim"], 35);
}

TEST(Cli, Gallery) {
  EXPECT_EQ(run({"gallery", "tiles"}).code, 0);
  EXPECT_EQ(run({"gallery", "birank43"}).code, 0);
  EXPECT_EQ(run({"gallery", "identity", "--dims", "2,3"}).code, 0);
  EXPECT_EQ(run({"gallery", "unknown"}).code, 2);
}

TEST(Cli, ClassifyPointAndOperator) {
  const auto pt = temp_file("p.json", R"({"dims":[2,2],"rows":[[[[1,0],[0,0]],[[1,0],[0,0]]],[[[0,0],[1,0]],[["1/2",0],[0,1]]]]})");
  const auto c = json::parse(run({"classify", "--point", pt, "--format", "json"}).out);
  EXPECT_EQ(c["verdict"], "exact");
  EXPECT_EQ(c["length"], 2);

  const auto f = birank43();
  const json op = {{"dims", to_json(f.dims)}, {"matrix", to_json(f.rho)}};
  const auto path = temp_file("op.json", op.dump());
  const auto r = run({"classify", "--operator", path, "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["verdict"], "upper-bound");
  EXPECT_EQ(j["length"], 4);
  EXPECT_EQ(json::parse(run({"classify", "--operator", path, "--backend", "float", "--format", "json"}).out)["verdict"],
            "upper-bound");

  const auto bad = temp_file("bad.json", R"({"dims":[2,2],"matrix":[[[0,0],[1,0]],[[0,0],[0,0]]]})");
  EXPECT_EQ(run({"classify", "--operator", bad}).code, 2);
}

TEST(Cli, RankAtPoint) {
  const auto pt = temp_file("w.json", R"({"dims":[2,2],"rows":[[[[1,0],[0,0]],[[1,0],[0,0]]]]})");
  const auto j = json::parse(run({"rank", "--point", pt, "--format", "json"}).out);
  EXPECT_EQ(j["rank"], 5);
}

TEST(Io, PointRoundTrip) {
  const auto z = random_exact_point(Dims{2, 3}, 2, 4);
  EXPECT_EQ(point_from_json<GaussianRational>(json::parse(canonical_dump(to_json(z)))).row_list(), z.row_list());
}

TEST(Io, CanonicalDumpIsByteStable) {
  const json j = {{"b", 1.5}, {"a", {1, 2, 3}}, {"c", {{"y", nullptr}, {"x", "s"}}}, {"d", json::array({json::object({{"k", 0.1}})})}};
  EXPECT_EQ(canonical_dump(j),
            "{\n  \"a\": [1, 2, 3],\n  \"b\": 1.5,\n  \"c\": {\n    \"x\": \"s\",\n    \"y\": null\n  },\n"
            "  \"d\": [\n    {\n      \"k\": 0.10000000000000001\n    }\n  ]\n}");
  const auto a = run({"verify-critical", "--dims", "2,3", "--seed", "9", "--format", "json"}).out;
  const auto b = run({"verify-critical", "--dims", "2,3", "--seed", "9", "--format", "json"}).out;
  EXPECT_EQ(a, b);
  const auto fa = run({"rank", "--dims", "2,3", "--r", "4", "--backend", "float", "--format", "json"}).out;
  EXPECT_EQ(fa, run({"rank", "--dims", "2,3", "--r", "4", "--backend", "float", "--format", "json"}).out);
  EXPECT_NE(fa.find("tolerance"), std::string::npos);
}

TEST(Io, Rationals) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-0.25")), "-1/4");
  EXPECT_EQ(to_string(parse_rational("7")), "7");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
}

#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "../tools/cli.hpp"
#include "symlra/families.hpp"
#include "symlra/io.hpp"

using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = symlra::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, GenThenRankestFromStdin) {
  const CliRun gen = run({"gen", "--family", "sin", "--n", "6", "--m", "3"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_EQ(json::parse(gen.out).at("family"), "sin");
  const CliRun est = run({"rankest", "-"}, gen.out);
  ASSERT_EQ(est.code, 0) << est.err;
  const json j = json::parse(est.out);
  EXPECT_EQ(j.at("rank"), 2);
  EXPECT_NEAR(j.at("singular_values")[0].get<double>(), 5.7857, 1e-3);
}

TEST(Cli, ApproxOutputIsByteStableWithoutTiming) {
  const std::string f = symlra::io::tensor_to_json(symlra::rootsum_tensor(4, 4)).dump();
  const CliRun a = run({"approx", "-", "--rank", "3"}, f);
  const CliRun b = run({"approx", "-", "--rank", "3"}, f);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_LE(j.at("err_opt").get<double>(), j.at("err_gp").get<double>());
  EXPECT_FALSE(j.at("diagnostics").contains("seconds"));
  const CliRun t = run({"approx", "-", "--rank", "3", "--timing"}, f);
  EXPECT_TRUE(json::parse(t.out).at("diagnostics").contains("seconds"));
}

TEST(Cli, DecomposeExitCodes) {
  const CliRun gen = run({"gen", "--family", "random", "--n", "5", "--m", "3", "--rank", "3", "--seed", "4"});
  ASSERT_EQ(gen.code, 0);
  const CliRun ok = run({"decompose", "-", "--rank", "3"}, gen.out);
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_TRUE(json::parse(ok.out).at("success").get<bool>());

  const std::string hard = symlra::io::tensor_to_json(symlra::rootsum_tensor(5, 4)).dump();
  const CliRun miss = run({"decompose", "-", "--rank", "2"}, hard);
  EXPECT_EQ(miss.code, 1);
  EXPECT_FALSE(json::parse(miss.out).at("success").get<bool>());
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"approx", "/nonexistent/file.json"}).code, 2);
  EXPECT_EQ(run({"approx", "-"}, "{\"n\": 2").code, 2);
  EXPECT_EQ(run({"approx", "-", "--bogus"}, "{}").code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"gen", "--family", "random", "--n", "3", "--m", "3"}).code, 2);  // needs --rank
  const std::string f = symlra::io::tensor_to_json(symlra::sin_tensor(3, 3)).dump();
  EXPECT_EQ(run({"approx", "-", "--rank", "100"}, f).code, 2);
  const CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("approx"), std::string::npos);
}

TEST(Cli, TableFormatAndBench) {
  const std::string f = symlra::io::tensor_to_json(symlra::sin_tensor(5, 3)).dump();
  const CliRun t = run({"rankest", "-", "--format", "table"}, f);
  ASSERT_EQ(t.code, 0);
  EXPECT_THROW(json::parse(t.out), json::parse_error);
  const CliRun b = run({"bench", "--kind", "decompose", "--trials", "2", "--cases", "4,3,2"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(json::parse(b.out)[0].at("successes"), 2);
}

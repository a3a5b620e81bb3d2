#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "symlra/families.hpp"
#include "symlra/io.hpp"

using namespace symlra;
using nlohmann::json;

TEST(TensorJson, CompactRoundTrip) {
  const auto inst = random_rank_r(3, 4, 2, 1);
  const SymTensor back = io::tensor_from_json(io::tensor_to_json(inst.tensor));
  EXPECT_EQ(back.dim(), 3);
  EXPECT_EQ(back.order(), 4);
  EXPECT_EQ(back.values(), inst.tensor.values());
}

TEST(TensorJson, FullRoundTrip) {
  const SymTensor f = small_cubic_tensor();
  const json j = io::tensor_to_json(f, true);
  EXPECT_EQ(j.at("format"), "full");
  EXPECT_EQ(j.at("entries").size(), 27u);
  EXPECT_EQ(io::tensor_from_json(j).values(), f.values());
}

TEST(TensorJson, OmittedEntriesAreZeroAndExtraKeysIgnored) {
  const json j = json::parse(R"({"n": 2, "m": 2, "comment": "x",
    "entries": [{"alpha": [1], "re": 2.5}, {"alpha": [2], "re": 0, "im": -1}]})");
  const SymTensor f = io::tensor_from_json(j);
  EXPECT_EQ(f.at(0), Complex(0.0));
  EXPECT_EQ(f.at(1), Complex(2.5));
  EXPECT_EQ(f.at(2), Complex(0.0, -1.0));
}

TEST(TensorJson, RejectsMalformedInput) {
  const char* bad[] = {
      R"({"m": 2, "entries": []})",
      R"({"n": 0, "m": 2, "entries": []})",
      R"({"n": 2, "m": 2})",
      R"({"n": 2, "m": 2, "entries": [{"alpha": [3], "re": 1}]})",
      R"({"n": 2, "m": 2, "entries": [{"alpha": [1, 0], "re": 1}]})",
      R"({"n": 2, "m": 2, "entries": [{"alpha": [1], "re": 1}, {"alpha": [1], "re": 2}]})",
      R"({"n": 2, "m": 2, "entries": [{"alpha": [1], "re": "a"}]})",
      R"({"n": 2, "m": 2, "format": "sparse", "entries": []})",
      R"({"n": 2, "m": 2, "format": "full", "entries": [{"index": [1, 3], "re": 1}]})",
      R"({"n": 2, "m": 2, "format": "full", "entries": [{"index": [1, 2], "re": 1}]})",
  };
  for (const char* s : bad) EXPECT_THROW(io::tensor_from_json(json::parse(s)), io::FormatError) << s;
}

TEST(DecompositionJson, RoundTripAndRankCheck) {
  const auto inst = random_rank_r(4, 3, 3, 2);
  const json j = io::decomposition_to_json(inst.truth);
  EXPECT_EQ(j.at("rank"), 3);
  const Decomposition d = io::decomposition_from_json(j);
  EXPECT_EQ(d.vectors, inst.truth.vectors);
  json wrong = j;
  wrong["rank"] = 2;
  EXPECT_THROW(io::decomposition_from_json(wrong), io::FormatError);
}

TEST(Files, ReadsTensorAndReportsErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "symlra_io_test";
  std::filesystem::create_directories(dir);
  const auto good = dir / "t.json";
  std::ofstream(good) << io::tensor_to_json(sin_tensor(3, 3)).dump();
  EXPECT_EQ(io::read_tensor_file(good).values(), sin_tensor(3, 3).values());

  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{\"n\": 2,";
  EXPECT_THROW(io::read_json_file(broken), io::FormatError);
  EXPECT_THROW(io::read_json_file(dir / "missing.json"), io::FormatError);
  std::filesystem::remove_all(dir);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "../support/format_oracle.hpp"
#include "../support/tempdir.hpp"
#include "taperbench/formats/codec.hpp"
#include "taperbench/formats/conformance.hpp"

namespace tb = taperbench;

namespace {

const std::filesystem::path kTables = TAPERBENCH_CONFORMANCE_DIR;

class FrozenTable : public ::testing::TestWithParam<tb::FormatId> {};

TEST_P(FrozenTable, MatchesCommittedCodeTable) {
  const auto f = GetParam();
  const auto file = kTables / (tb::format_name(f) + ".codes.csv");
  ASSERT_TRUE(std::filesystem::exists(file)) << file;
  std::ostringstream out;
  tb::write_code_table(out, f);
  const auto committed = slurp(file);
  EXPECT_EQ(out.str().size(), committed.size());
  EXPECT_TRUE(out.str() == committed) << tb::format_name(f);
}

// the committed rows agree with the rational model on value class and sign
TEST_P(FrozenTable, CommittedClassesMatchModel) {
  const auto f = GetParam();
  std::istringstream in(slurp(kTables / (tb::format_name(f) + ".codes.csv")));
  std::string line;
  std::getline(in, line);
  std::uint64_t expected_code = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    const auto code = std::stoull(line.substr(0, c1), nullptr, 16);
    ASSERT_EQ(code, expected_code++);
    const auto cls = line.substr(c2 + 1);
    const auto v = oracle::decode(f.family, f.width, code);
    switch (v.kind) {
      case oracle::Kind::zero:
        EXPECT_EQ(cls, "zero") << line;
        break;
      case oracle::Kind::real:
        EXPECT_EQ(cls, "real") << line;
        EXPECT_EQ(line[c1 + 1] == '-', v.negative) << line;
        break;
      case oracle::Kind::nar:
        EXPECT_EQ(cls, "nar") << line;
        break;
      case oracle::Kind::nan:
        EXPECT_EQ(cls, "nan") << line;
        break;
      case oracle::Kind::inf:
        EXPECT_EQ(cls, "inf") << line;
        break;
    }
  }
  EXPECT_EQ(expected_code, std::uint64_t{1} << f.width);
}

INSTANTIATE_TEST_SUITE_P(EightAndSixteenBit, FrozenTable,
                         ::testing::Values(tb::float8, tb::posit8, tb::takum8, tb::float16, tb::bfloat16, tb::posit16,
                                           tb::takum16),
                         [](const auto& info) { return tb::format_name(info.param); });

}  // namespace

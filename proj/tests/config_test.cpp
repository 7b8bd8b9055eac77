#include <gtest/gtest.h>

#include "sparsify/config.hpp"

using namespace sparsify;

TEST(KeyValueConfigTest, ParsesTrimmedPairsAndComments) {
  const KeyValueConfig c = KeyValueConfig::parse(
      "# header\n  seeds = 5  \nalgos = bs, ldc,,ultra\n\np=0.25 # trailing\nseeds=7\n");
  EXPECT_EQ(c.get_int("seeds"), 7);
  EXPECT_DOUBLE_EQ(c.get_double("p"), 0.25);
  EXPECT_EQ(c.get_list("algos"), (std::vector<std::string>{"bs", "ldc", "ultra"}));
  EXPECT_EQ(c.get("missing", "x"), "x");
  EXPECT_FALSE(c.get_bool("weighted", false));
}

TEST(KeyValueConfigTest, RejectsMalformedInput) {
  EXPECT_THROW(KeyValueConfig::parse("no equals sign"), ConfigError);
  EXPECT_THROW(KeyValueConfig::parse(" = 3"), ConfigError);
  const KeyValueConfig c = KeyValueConfig::parse("n = 12x\nflag = maybe\n");
  EXPECT_THROW(c.get_int("n"), ConfigError);
  EXPECT_THROW(c.get_bool("flag", true), ConfigError);
  EXPECT_THROW(c.get("absent"), ConfigError);
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/baseline.conf"), ConfigError);
}

TEST(KeyValueConfigTest, ShippedBaselinePinsConstants) {
  const KeyValueConfig c = KeyValueConfig::load(SPARSIFY_BENCH_BASELINE);
  EXPECT_DOUBLE_EQ(c.get_double("rounds_constant"), 2);
  EXPECT_DOUBLE_EQ(c.get_double("bs_size_constant"), 1.0);
  EXPECT_DOUBLE_EQ(c.get_double("det_size_constant"), 1.5);
  EXPECT_DOUBLE_EQ(c.get_double("linear_size_constant"), 4.6);
}

#include <gtest/gtest.h>

#include <sstream>

#include "sebot/errors.hpp"
#include "sebot/kv_config.hpp"

using namespace sebot;

namespace {
KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "mem");
}
}  // namespace

TEST(KeyValueConfig, ScalarsListsAndSections) {
  const auto kv = parse(
      "communities = 3   # trailing comment\n"
      "sizes = [5, 6, 7]\n"
      "name = \"a # not a comment\"\n"
      "; full-line comment\n"
      "[mix]\n"
      "retweet = 1.0\n"
      "[detector]\n"
      "calibrate = yes\n");
  EXPECT_EQ(kv.get_uint("communities", 0), 3u);
  EXPECT_EQ(kv.get_uint_list("sizes"), (std::vector<unsigned long long>{5, 6, 7}));
  EXPECT_EQ(kv.get_string("name", ""), "a # not a comment");
  EXPECT_DOUBLE_EQ(kv.get_double("mix.retweet", 0), 1.0);
  EXPECT_TRUE(kv.get_bool("detector.calibrate", false));
  EXPECT_EQ(kv.get_int("missing", -7), -7);
  EXPECT_TRUE(kv.unused_keys().empty());
}

TEST(KeyValueConfig, ListWithoutBrackets) {
  const auto kv = parse("selectors = entropy, degree\n");
  EXPECT_EQ(kv.get_list("selectors"), (std::vector<std::string>{"entropy", "degree"}));
  EXPECT_TRUE(kv.get_list("absent").empty());
}

TEST(KeyValueConfig, TracksUnusedKeys) {
  const auto kv = parse("a = 1\nb = 2\n");
  kv.get_int("a", 0);
  EXPECT_EQ(kv.unused_keys(), (std::vector<std::string>{"b"}));
}

TEST(KeyValueConfig, BadValuesAreConfigErrors) {
  const auto kv = parse("n = 12x\nflag = maybe\nneg = -3\n");
  EXPECT_THROW(kv.get_int("n", 0), ConfigError);
  EXPECT_THROW(kv.get_bool("flag", false), ConfigError);
  EXPECT_THROW(kv.get_uint("neg", 0), ConfigError);
}

TEST(KeyValueConfig, SyntaxErrorsAreParseErrors) {
  EXPECT_THROW(parse("just words\n"), ParseError);
  EXPECT_THROW(parse("a = 1\na = 2\n"), ParseError);
  EXPECT_THROW(parse("[open\n"), ParseError);
  EXPECT_THROW(parse(" = 4\n"), ParseError);
}

TEST(KeyValueConfig, MissingFileIsIoError) {
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/run.cfg"), IoError);
}

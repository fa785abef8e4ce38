#include <gtest/gtest.h>

#include "cams/logging.hpp"
#include "cams/validation/properties.hpp"

TEST(Properties, ReferenceSuitePasses) {
  cams::logger().set_level(spdlog::level::err);
  for (const auto& p : cams::validation::run_properties()) EXPECT_TRUE(p.passed) << p.name << ": " << p.detail;
}

#include <gtest/gtest.h>

#include "prophecke/root_system.hpp"

using namespace prophecke;

TEST(RootSystem, WeylOrders) {
  EXPECT_EQ(RootSystem(RootDatum::SL2()).order(), 2);
  EXPECT_EQ(RootSystem(RootDatum::GL2()).order(), 2);
  EXPECT_EQ(RootSystem(RootDatum::SL3()).order(), 6);
  EXPECT_EQ(RootSystem(RootDatum::Sp4()).order(), 8);
}

#include <doctest.h>

TEST_SUITE_BEGIN("protocols");

TEST_SUITE_END();

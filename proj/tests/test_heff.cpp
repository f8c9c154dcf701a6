#include <doctest.h>

TEST_SUITE_BEGIN("heff");

TEST_SUITE_END();

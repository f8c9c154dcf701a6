#include <doctest.h>

TEST_SUITE_BEGIN("calibration");

TEST_SUITE_END();

#include <catch2/catch_amalgamated.hpp>
TEST_CASE("pending") { FAIL("module 'props' tests not written yet"); }

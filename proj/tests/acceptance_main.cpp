// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <iostream>

#include "dualitylab/repro.hpp"

int main() { return dualitylab::run_suite("all", 12345, std::cout); }

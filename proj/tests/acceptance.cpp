// Acceptance suite: one pass/fail line per criterion (see README).
#include <iostream>

#include "asmbij/cli.hpp"

int main() {
  bool ok = asmbij::acceptance_suite(3600.0, std::cout);
  return ok ? 0 : 1;
}

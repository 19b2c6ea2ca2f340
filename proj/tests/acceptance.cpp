// Runs every acceptance criterion and prints one line per criterion.
// Exit status is 0 iff all gating criteria pass; trend criteria are reported only.

#include <iostream>

#include "fks/validate.hpp"

int main() {
  const fks::ValidationReport report = fks::run_validation();
  std::cout << report.render();
  return report.gating_passed() ? 0 : 1;
}

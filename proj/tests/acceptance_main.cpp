// Acceptance suite: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <iostream>

#include "CLI11.hpp"
#include "frozenspec/acceptance.hpp"

int main(int argc, char** argv) {
  CLI::App app{"frozenspec acceptance suite"};
  frozenspec::AcceptanceOptions options;
  app.add_option("--only", options.only, "criterion ids")->delimiter(',');
  app.add_option("--tolerance-scale", options.tolerance_scale, "multiplies every tolerance");
  CLI11_PARSE(app, argc, argv);

  const auto results = frozenspec::run_acceptance(options);
  std::cout << frozenspec::acceptance_text(results) << std::flush;
  return frozenspec::all_passed(results) ? 0 : 1;
}

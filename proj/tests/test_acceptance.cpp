#include <cstdio>

#include "gwm/verify.hpp"

int main() {
  gwm::VerifyOptions opts;
  opts.full = true;
  const auto results = gwm::run_acceptance_suite(opts);
  std::fputs(gwm::format_report(results).c_str(), stdout);
  return gwm::all_passed(results) ? 0 : 1;
}

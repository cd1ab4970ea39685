// Prints the first coefficients of the five ones-weighted crank generating functions
// and checks one of the dissection identities against them.
#include <iostream>

#include "qstat/identities.hpp"
#include "qstat/io.hpp"

int main() {
  using namespace qstat;
  const auto m = momega_filter<rational>(24);
  for (int b = 0; b < 5; ++b) std::cout << "M_omega(" << b << ",5,n): " << io::to_text(m[b]) << '\n';

  const auto report = run_check("T1.a", 50);
  std::cout << report.id << (report.passed ? " holds" : " FAILS") << " to order " << report.order << '\n';
  return report.passed ? 0 : 1;
}

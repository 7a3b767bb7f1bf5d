#pragma once

#include <iosfwd>

namespace ffcm {

// The acceptance/self-test suite.  Criteria:
//   1 exponential-sum identity (direct = closed, full small grid)
//   2 delta-method identity (reconstruction = brute-force count)
//   3 oscillatory-integral case analysis (closed = numeric, all branches)
//   4 Kl_infinity / B_infinity closed forms vs sphere integrals
//   5 character infrastructure (Kubota, dissection, Gauss-factor integral)
//   6 Morgenstern graph certification
//   7 singular series consistency (r-sum vs local-density product)
//   8 twisted Linnik-Selberg sweep sanity
// Prints one "PASS:"/"FAIL:" line per criterion; returns true iff all
// requested criteria pass.  criterion = 0 runs all.
bool run_acceptance(int criterion, std::ostream& out, int jobs = 0);

}  // namespace ffcm

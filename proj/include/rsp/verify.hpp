// Invariant suites behind `rsp verify`: each suite measures its module's
// structural identities with fixed-seed draws and reports the worst
// deviation against the pinned tolerance.

#pragma once

#include <string>
#include <vector>

namespace rsp {

struct InvariantResult {
    std::string name;
    double deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    // Negative-control hook: perturbs one unitary inside the finite suite so
    // the checks must fail.
    bool perturb_finite = false;
};

std::vector<std::string> verify_suite_names();

// Run one suite ("qmath", "bipartite", "finite", "quadrature", "phase",
// "photon", "engine") or "all".  Unknown names throw std::invalid_argument.
std::vector<InvariantResult> verify_suite(const std::string& suite,
                                          const VerifyOptions& options = {});

}  // namespace rsp

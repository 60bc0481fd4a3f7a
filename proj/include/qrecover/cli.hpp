/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef QRECOVER_CLI_HPP_
#define QRECOVER_CLI_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace qrecover {

// One property line of a check suite: how many instances ran, how many
// failed, and the most adverse margin seen. Informational properties (the
// composition axiom) never count as failures.
struct PropertyResult {
  std::string name;
  long long instances = 0;
  long long failures = 0;
  double worst = 0;
  bool informational = false;
};

// Suites: info, classical, functoriality, fvdg, pinsker, chain_identity.
// trials <= 0 selects the per-suite default.
std::vector<PropertyResult> run_check_suite(const std::string &suite,
                                            long long trials,
                                            std::uint64_t seed);

// Exit codes: 0 success, 1 input or configuration error, 2 invariant or
// assertion failure. Violations found by fuzz campaigns are findings, not
// failures, and exit 0.
int run_cli(int argc, const char *const *argv);
int run_cli(const std::vector<std::string> &args); // argv[0] excluded

} // namespace qrecover

#endif // QRECOVER_CLI_HPP_

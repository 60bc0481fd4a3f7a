/**
 * Copyright 2026, the qrecover authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "qrecover/cli.hpp"

int main(int argc, char **argv) { return qrecover::run_cli(argc, argv); }

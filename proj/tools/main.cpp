// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include <iostream>
#include <string>
#include <vector>

#include "imginfo/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return imginfo::run_cli(args, std::cout, std::cerr);
}

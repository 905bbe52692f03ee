// SPDX-License-Identifier: MIT
#include "sepdec/cli.hpp"

int main(int argc, char** argv) { return sepdec::cli_main(argc, argv); }

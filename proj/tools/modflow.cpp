#include <iostream>

#include "modflow/cli.hpp"

int main(int argc, char** argv) { return modflow::run_cli(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "recomp/cli.hpp"

int main(int argc, char** argv) { return recomp::cli_main(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "qclone/cli.hpp"

int main(int argc, char** argv) { return qclone::run_cli(argc, argv, std::cout, std::cerr); }

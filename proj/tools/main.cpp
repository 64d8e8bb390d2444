#include <iostream>

#include "wcsp/cli.hpp"

int main(int argc, char** argv) { return wcsp::cli::run(argc, argv, std::cout, std::cerr); }

#include <iostream>

#include "dsvs/cli.hpp"

int main(int argc, char** argv) { return dsvs::cli::run(argc, argv, std::cout, std::cerr); }

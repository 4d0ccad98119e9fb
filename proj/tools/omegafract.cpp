#include <iostream>

#include "omegafract/cli.hpp"

int main(int argc, char** argv) { return omegafract::run(argc, argv, std::cout, std::cerr); }

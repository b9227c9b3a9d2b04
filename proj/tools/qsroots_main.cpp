#include <iostream>

#include "qsroots/cli.hpp"

int main(int argc, char** argv) { return qsroots::cli::run(argc, argv, std::cout, std::cerr); }

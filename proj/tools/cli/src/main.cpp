#include <iostream>

#include "jonq_cli/cli.hpp"

int main(int argc, char** argv) { return jonq::cli::run_main(argc, argv, std::cout, std::cerr); }

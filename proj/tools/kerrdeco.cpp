#include <iostream>

#include "kerrdeco/cli/app.hpp"

int main(int argc, char** argv) { return kerrdeco::cli::run(argc, argv, std::cout, std::cerr); }

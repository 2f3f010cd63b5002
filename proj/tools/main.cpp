#include <exception>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  try {
    return ifslab::cli::run(argc, argv, std::cout, std::cerr);
  } catch (std::exception const& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}

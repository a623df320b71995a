#include <iostream>

#include "fracrd/cli.hpp"

int main(int argc, char** argv) {
  return fracrd::cli::dispatch(argc, argv, std::cout, std::cerr);
}

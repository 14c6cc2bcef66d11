#include <iostream>

#include "octoroot/cli.hpp"

int main(int argc, char** argv) {
  return octoroot::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

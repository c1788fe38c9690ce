#include <iostream>

#include "mfic/cli.hpp"

int main(int argc, char** argv) {
    return mfic::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}

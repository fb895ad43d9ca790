#include <vector>

#include "cvxpoly/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return cvxpoly::cli::run(std::move(args));
}

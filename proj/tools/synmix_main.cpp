#include <string>
#include <vector>

#include "synmix/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return synmix::cli::run(args);
}

#include <iostream>
#include <string>
#include <vector>

#include "finabel/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    finabel::CommandResult res = finabel::run_command(args);
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}

#include <iostream>
#include <string>
#include <vector>

#include "ratinterp/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return ratinterp::run_cli(args, std::cout, std::cerr);
}

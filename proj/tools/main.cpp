#include <iostream>
#include <string>
#include <vector>

#include <unistd.h>

#include "freemax/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return freemax::run_cli(args, std::cout, std::cerr, isatty(STDOUT_FILENO) != 0);
}

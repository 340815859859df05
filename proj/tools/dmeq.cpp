#include <iostream>
#include <string>
#include <vector>

#include "dmeq/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv, argv + argc);
    return dmeq::run_cli(args, std::cout, std::cerr);
}

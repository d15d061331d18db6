#include <iostream>

#include "bdmc/cli.hpp"

int main(int argc, char** argv)
{
    return bdmc::cli::run(argc, argv, std::cout, std::cerr);
}

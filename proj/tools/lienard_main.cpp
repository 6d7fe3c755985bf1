#include "lienard/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return lienard::cli::run(argc, argv, std::cout, std::cerr);
}

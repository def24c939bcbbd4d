#include <iostream>

#include "subriem/cli/cli.hpp"

int main(int argc, char** argv)
{
    return subriem::cli::main_entry(argc, argv, std::cout, std::cerr);
}

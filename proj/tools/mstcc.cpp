#include <string>
#include <vector>

#include "mstcc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return mstcc::run(args);
}

#include <string>
#include <vector>

#include "kplot_cli.hpp"

int main(int argc, char** argv) {
    return kplot::cli::run(std::vector<std::string>(argv, argv + argc));
}

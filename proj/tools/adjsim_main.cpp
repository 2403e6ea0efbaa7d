#include "adjsim/cli.hpp"

int main(int argc, char** argv) {
    return adjsim::cli_main(argc, argv);
}

#include "reallot/cli.hpp"

int main(int argc, char** argv) {
    return reallot::run_cli(argc, argv);
}

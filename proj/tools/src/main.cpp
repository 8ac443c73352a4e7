#include "knstat/cli.hpp"

int main(int argc, char** argv) {
    return knstat::cli::run(argc, argv);
}

#include "helmholtz/cli.hpp"

int main(int argc, char** argv) { return helmholtz::cli::run(argc, argv); }

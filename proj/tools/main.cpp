#include "roundness/cli.hpp"

int main(int argc, char** argv) { return roundness::cli::run(argc, argv); }

#include "mucalc/cli.hpp"

int main(int argc, char** argv) { return mucalc::cli::run(argc, argv); }

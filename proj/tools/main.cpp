#include "subdim/cli.hpp"

int main(int argc, char** argv) { return subdim::cli_main(argc, argv); }

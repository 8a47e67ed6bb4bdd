#include "umbilic/cli.hpp"

int main(int argc, char** argv) { return umbilic::cli::run_cli(argc, argv); }

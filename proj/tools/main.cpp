#include "plnr/cli.hpp"

int main(int argc, char** argv) { return plnr::cli::run(argc, argv); }

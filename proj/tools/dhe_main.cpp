#include "dhe/cli.hpp"

int main(int argc, char** argv) { return dhe::cli::run(argc, argv); }

#include "parafermion/cli.hpp"

int main(int argc, char** argv) { return parafermion::cli::run(argc, argv); }

#include "cli.hpp"

int main(int argc, char** argv) { return tprophet::cli::run(argc, argv); }

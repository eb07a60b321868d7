#include "softtorus/cli.hpp"

int main(int argc, char** argv) { return softtorus::run_cli(argc, argv); }

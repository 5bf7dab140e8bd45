#include "subdeg/cli.hpp"

int main(int argc, char** argv) { return subdeg::run_cli(argc, argv); }

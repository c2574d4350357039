#include "sda/cli.hpp"

int main(int argc, char** argv) { return sda::run_cli(argc, argv); }

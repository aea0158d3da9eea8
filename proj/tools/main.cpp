#include "symplab/cli.hpp"

int main(int argc, char** argv) { return symplab::run_cli(argc, argv); }

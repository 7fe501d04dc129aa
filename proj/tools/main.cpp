#include "chnst/cli.hpp"

int main(int argc, char** argv) { return chnst::run_cli(argc, argv); }

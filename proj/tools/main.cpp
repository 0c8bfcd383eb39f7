#include "h2pf/cli.hpp"

int main(int argc, char** argv) { return h2pf::run_cli(argc, argv); }

#include "emforms/cli.hpp"

int main(int argc, char** argv) { return emforms::run_cli(argc, argv); }

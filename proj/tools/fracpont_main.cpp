#include "fracpont/cli.hpp"

int main(int argc, char** argv) { return fracpont::run_cli(argc, argv); }

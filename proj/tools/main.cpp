#include "rtrack/cli.hpp"

int main(int argc, char** argv) { return rtrack::run_cli(argc, argv); }

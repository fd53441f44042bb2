#include "gwm/cli.hpp"

int main(int argc, char** argv) { return gwm::run_cli(argc, argv); }

#include "hjbnav/cli.hpp"

int main(int argc, char** argv) { return hjbnav::run_cli(argc, argv); }

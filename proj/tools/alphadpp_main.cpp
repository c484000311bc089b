#include "alphadpp/cli.hpp"

int main(int argc, char** argv) { return alphadpp::run_cli(argc, argv); }

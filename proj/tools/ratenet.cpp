#include "ratenet/cli.hpp"

int main(int argc, char** argv) { return ratenet::run_cli(argc, argv); }

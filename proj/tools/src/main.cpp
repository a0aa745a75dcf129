#include "hbloch/cli.hpp"

int main(int argc, char** argv) { return hbloch::cli::main_entry(argc, argv); }

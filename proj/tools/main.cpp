#include "cli.hpp"

int main(int argc, char** argv) { return sadisc::cli::main_entry(argc, argv); }

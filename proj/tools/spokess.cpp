#include "spokess/cli.hpp"

int main(int argc, char** argv) { return spokess::main_entry(argc, argv); }

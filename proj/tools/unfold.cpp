#include "commands.hpp"

int main(int argc, char** argv) { return unfold::cli::main_entry(argc, argv); }

#include "commands.hpp"

int main(int argc, char** argv) { return w2b::cli::run(argc, argv); }

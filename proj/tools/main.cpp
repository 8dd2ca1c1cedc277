#include "commands.hpp"

int main(int argc, char** argv) { return ialpha::cli::run(argc, argv); }

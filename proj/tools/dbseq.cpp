#include "dbseq/cli.hpp"

int main(int argc, char** argv) { return dbseq::cli::main_entry(argc, argv); }

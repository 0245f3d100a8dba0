#include "ibfem/cli.hpp"

int main(int argc, char** argv) { return ibfem::cli_main(argc, argv); }

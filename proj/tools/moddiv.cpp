#include "moddiv/cli.hpp"

int main(int argc, char** argv) { return moddiv::app::cli_main(argc, argv); }

#include <ffdigits/cli.hpp>

int main(int argc, char** argv) { return ffdigits::cli_main(argc, argv); }

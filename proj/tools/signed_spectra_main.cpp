#include "signed_spectra/cli.hpp"

int main(int argc, char** argv) { return signed_spectra::cli::run(argc, argv); }

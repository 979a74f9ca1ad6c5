#include "reflectode/cli.hpp"

int main(int argc, char** argv) { return reflectode::cli::run(argc, argv); }

#include "cellrate/cli/run.hpp"

int main(int argc, char** argv) { return cellrate::cli::run(argc, argv); }

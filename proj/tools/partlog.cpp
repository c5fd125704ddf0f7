#include "partlog/cli.hpp"

int main(int argc, char** argv) { return partlog::cli::run(argc, argv); }

#include "fractdist/experiments.hpp"

int main(int argc, char** argv) { return fractdist::run_cli(argc, argv); }

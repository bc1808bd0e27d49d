#include "nselab/lab.hpp"

int main(int argc, char** argv) { return nselab::run_cli(argc, argv); }

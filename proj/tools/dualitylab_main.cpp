#include "dualitylab/cli_report.hpp"

int main(int argc, char** argv) { return dualitylab::run_cli(argc, argv); }

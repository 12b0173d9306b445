#include "allpay/cli.hpp"

int main(int argc, char** argv) { return allpay::run_cli(argc, argv); }

#include "driver.hpp"

int main(int argc, char** argv) { return su2ent::cli::main_entry(argc, argv); }

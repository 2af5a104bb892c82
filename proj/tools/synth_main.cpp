// Writes the scripted 300-cycle demo log used throughout the test suite.

#include <fstream>
#include <iostream>

#include "synthetic.hpp"

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: passcast-synth <out.rcg>\n";
        return 1;
    }
    std::ofstream out(argv[1]);
    if (!out) {
        std::cerr << "error: cannot write " << argv[1] << '\n';
        return 2;
    }
    out << passcast::testing::synthetic_match().rcg;
    return out ? 0 : 2;
}

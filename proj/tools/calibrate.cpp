// Regenerates src/euler_calibration.json: hopfpath-calibrate [max_nodes] > src/euler_calibration.json
#include "hopfpath/rde.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
    const int max_nodes = argc > 1 ? std::atoi(argv[1]) : 5;
    std::cout << hopfpath::calibration_to_json(hopfpath::calibrate_euler(max_nodes));
    return 0;
}

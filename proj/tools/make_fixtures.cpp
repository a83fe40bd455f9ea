// Regenerates the golden files under tests/data from the brute-force
// reference path:  nnhc_make_fixtures <output-dir>

#include <fstream>
#include <iostream>
#include <string>

#include "nnhc.hpp"

namespace {

void write(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw nnhc::IoError("cannot write '" + path + "'");
    std::cout << "wrote " << path << "\n";
}

void emit(const std::string& dir, const std::string& name, const nnhc::Dataset& data) {
    write(dir + "/" + name + ".csv", nnhc::io::to_csv(data));
    // Golden files are built from the CSV text so they match what readers see.
    const nnhc::Dataset parsed = [&] {
        std::ifstream in(dir + "/" + name + ".csv");
        return nnhc::io::read_csv(in);
    }();
    const nnhc::Hierarchy h = nnhc::oracle::oracle_hierarchy(parsed, nnhc::Metric::euclidean());
    const nnhc::Partition natural = nnhc::natural_partition(h);
    write(dir + "/" + name + ".json", nnhc::io::hierarchy_document(h, &natural, "natural"));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <output-dir>\n";
        return 4;
    }
    const std::string dir = argv[1];
    try {
        emit(dir, "four_points", nnhc::Dataset(1, {0.0, 1.0, 10.0, 11.0}));

        // Two broad modes and a tight five-point mode between them, placed
        // so that the coarsest level merges the small mode into a big one.
        emit(dir, "three_gaussians",
             nnhc::sample_mixture({{{0.0, 0.0}, 1.0, 80}, {{5.0, 0.0}, 1.0, 80}, {{2.5, 3.0}, 0.05, 5}},
                                  14));

        emit(dir, "uniform_100", nnhc::sample_points(100, nnhc::Distribution::uniform_square, 100));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#ifndef FRACTDIST_IO_HPP
#define FRACTDIST_IO_HPP

#include <string>
#include <vector>

namespace fractdist {

// Shortest round-trip decimal form; the one formatting used in every
// artifact so reruns are byte-identical.
std::string fmt_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// A computed output file, materialized only after the whole experiment
// succeeded (failed runs leave nothing behind).
struct Artifact {
  std::string name;
  std::string content;
};

}  // namespace fractdist

#endif

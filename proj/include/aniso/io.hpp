#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include "aniso/blocks.hpp"
#include "aniso/field.hpp"

namespace aniso {

/// AFLD1 field files: ASCII header `AFLD1 N1 N2 N3 L1 L2 L3 ncomp\n` followed by
/// little-endian float64 samples, component-major, x3 fastest.
void write_field(const std::filesystem::path& path, const Field& f);
Field read_field(const std::filesystem::path& path);
/// Parses an in-memory AFLD1 image; errors name the byte offset of the defect.
Field parse_field(const std::string& bytes, const std::string& origin = "<memory>");

/// Shortest round-trip decimal representation of a double.
std::string format_double(double v);

/// Minimal CSV writer with `\n` line endings and `.` decimal separator.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
};

/// Block-energy table export `k,j,energy_Lp,p`.
void write_block_csv(const std::filesystem::path& path, const BlockTable& norms, double p);

}  // namespace aniso

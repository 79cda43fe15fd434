// CSV I/O. Matrix files carry a "rows,cols" header line followed by one
// comma-separated line per row; tables carry a snake_case header row.
// Output is locale-independent.

#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace scmac {

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m);

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);

 private:
  std::ofstream out_;
  std::size_t columns_;
};

std::string format_double(double v);

}  // namespace scmac

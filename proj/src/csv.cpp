#include "scmac/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace scmac {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix_csv(const std::filesystem::path& path,
                      const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("write_matrix_csv: cannot open " + path.string());
  out << m.rows() << "," << m.cols() << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ",";
      out << format_double(m(r, c));
    }
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("read_matrix_csv: cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("read_matrix_csv: empty file " + path.string());

  auto parse_header = [&](const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("read_matrix_csv: malformed header in " +
                               path.string());
    return std::pair<long, long>{std::stol(s.substr(0, comma)),
                                 std::stol(s.substr(comma + 1))};
  };
  const auto [rows, cols] = parse_header(line);
  if (rows < 0 || cols < 0)
    throw std::runtime_error("read_matrix_csv: bad dimensions in " +
                             path.string());

  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    if (!std::getline(in, line))
      throw std::runtime_error("read_matrix_csv: truncated file " +
                               path.string());
    std::stringstream ss(line);
    std::string cell;
    for (long c = 0; c < cols; ++c) {
      if (!std::getline(ss, cell, ','))
        throw std::runtime_error("read_matrix_csv: short row in " +
                                 path.string());
      m(r, c) = std::stod(cell);
    }
  }
  return m;
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& columns)
    : out_(path), columns_(columns.size()) {
  if (!out_)
    throw std::runtime_error("CsvWriter: cannot open " + path.string());
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out_ << ",";
    out_ << columns[i];
  }
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_)
    throw std::invalid_argument("CsvWriter: column count mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out_ << ",";
    out_ << format_double(values[i]);
  }
  out_ << "\n";
}

}  // namespace scmac

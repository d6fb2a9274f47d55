#include "stvo/matrix_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

constexpr std::array<char, 5> kMagic{'S', 'T', 'V', 'R', '1'};

static_assert(std::endian::native == std::endian::little, "binary container assumes little-endian");

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in, std::uint64_t offset) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw DatasetError("truncated matrix header", offset);
  }
  return v;
}

}  // namespace

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  const auto old_precision = out.precision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
  out.precision(old_precision);
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::vector<double> values;
  Eigen::Index cols = -1;
  Eigen::Index rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    Eigen::Index n = 0;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        throw DimensionError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
      }
      ++n;
    }
    if (cols < 0) cols = n;
    if (n != cols) {
      throw DimensionError("line " + std::to_string(line_no) + " has " + std::to_string(n) +
                           " columns, expected " + std::to_string(cols));
    }
    ++rows;
  }
  if (rows == 0) return {};
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  }
  return m;
}

void write_matrix_binary(std::ostream& out, const Eigen::MatrixXd& m) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (static_cast<std::uint64_t>(m.rows()) > kMax || static_cast<std::uint64_t>(m.cols()) > kMax) {
    throw DimensionError("matrix too large for the binary container");
  }
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, static_cast<std::uint32_t>(m.rows()));
  put_u32(out, static_cast<std::uint32_t>(m.cols()));
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = m;
  out.write(reinterpret_cast<const char*>(rm.data()),
            static_cast<std::streamsize>(rm.size() * sizeof(double)));
}

Eigen::MatrixXd read_matrix_binary(std::istream& in) {
  std::array<char, 5> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw DatasetError("bad matrix container magic", 0);
  }
  const std::uint32_t rows = get_u32(in, 5);
  const std::uint32_t cols = get_u32(in, 9);
  const std::uint64_t count = static_cast<std::uint64_t>(rows) * cols;
  if (count > (std::uint64_t{1} << 32)) throw DatasetError("matrix container too large", 5);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm(rows, cols);
  const auto bytes = static_cast<std::streamsize>(count * sizeof(double));
  if (!in.read(reinterpret_cast<char*>(rm.data()), bytes)) {
    throw DatasetError("truncated matrix payload", 13 + static_cast<std::uint64_t>(in.gcount()));
  }
  return rm;
}

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  if (path.extension() == ".csv") {
    write_matrix_csv(out, m);
  } else {
    write_matrix_binary(out, m);
  }
  if (!out) throw Error("write to " + path.string() + " failed");
}

Eigen::MatrixXd load_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return path.extension() == ".csv" ? read_matrix_csv(in) : read_matrix_binary(in);
}

}  // namespace stvo

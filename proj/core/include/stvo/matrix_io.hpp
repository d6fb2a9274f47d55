#pragma once

// StateMatrix / ReadoutWeights serialization.
//
// Binary container, little-endian:
//   bytes 0..4   "STVR1"
//   u32          rows
//   u32          cols
//   f64[rows*cols] row-major payload

#include <filesystem>
#include <iosfwd>

#include <Eigen/Core>

namespace stvo {

/// Plain CSV, one matrix row per line, no header.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

void write_matrix_binary(std::ostream& out, const Eigen::MatrixXd& m);
/// Throws DatasetError on a bad magic, truncated payload or oversized header.
Eigen::MatrixXd read_matrix_binary(std::istream& in);

void save_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);
/// Dispatches on the extension: ".csv" is text, anything else is the binary container.
Eigen::MatrixXd load_matrix(const std::filesystem::path& path);

}  // namespace stvo

#pragma once

// IDX container reader (MNIST). Big-endian header; gzip-compressed files are
// detected and inflated transparently.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace stvo {

struct IdxImages {
  std::size_t count = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major

  std::size_t pixels_per_image() const noexcept { return rows * cols; }
};

struct IdxLabels {
  std::vector<std::uint8_t> values;
};

/// Parse from an in-memory (already inflated) buffer. Throws DatasetError with
/// the byte offset of the first inconsistency.
IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes);
IdxLabels parse_idx_labels(const std::vector<std::uint8_t>& bytes);

/// Whole file, inflated if gzip-compressed.
std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path);

IdxImages read_idx_images(const std::filesystem::path& path);
IdxLabels read_idx_labels(const std::filesystem::path& path);

struct MnistData {
  IdxImages train_images;
  IdxLabels train_labels;
  IdxImages test_images;
  IdxLabels test_labels;
};

/// Loads the four standard files (optionally with a .gz suffix) from `dir`.
/// Throws DatasetError if a file is missing, malformed, or counts disagree.
MnistData load_mnist(const std::filesystem::path& dir);

}  // namespace stvo

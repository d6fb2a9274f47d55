#include "stvo/idx.hpp"

#include <array>
#include <cstdio>
#include <string>

#include <zlib.h>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t offset) {
  if (offset + 4 > b.size()) throw DatasetError("truncated IDX header", b.size());
  return (std::uint32_t{b[offset]} << 24) | (std::uint32_t{b[offset + 1]} << 16) |
         (std::uint32_t{b[offset + 2]} << 8) | std::uint32_t{b[offset + 3]};
}

std::string hex(std::uint32_t v) {
  std::array<char, 11> buf{};
  std::snprintf(buf.data(), buf.size(), "0x%08x", v);
  return buf.data();
}

}  // namespace

IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes) {
  const std::uint32_t magic = be32(bytes, 0);
  if (magic != kImagesMagic) {
    throw DatasetError("IDX image magic " + hex(magic) + ", expected " + hex(kImagesMagic), 0);
  }
  IdxImages images;
  images.count = be32(bytes, 4);
  images.rows = be32(bytes, 8);
  images.cols = be32(bytes, 12);
  if (images.rows == 0 || images.cols == 0) throw DatasetError("zero image dimension", 8);
  const std::size_t payload = images.count * images.rows * images.cols;
  if (bytes.size() < 16 + payload) {
    throw DatasetError("image payload truncated: expected " + std::to_string(payload) +
                           " bytes after the header",
                       bytes.size());
  }
  if (bytes.size() > 16 + payload) throw DatasetError("trailing bytes after image payload", 16 + payload);
  images.pixels.assign(bytes.begin() + 16, bytes.end());
  return images;
}

IdxLabels parse_idx_labels(const std::vector<std::uint8_t>& bytes) {
  const std::uint32_t magic = be32(bytes, 0);
  if (magic != kLabelsMagic) {
    throw DatasetError("IDX label magic " + hex(magic) + ", expected " + hex(kLabelsMagic), 0);
  }
  const std::size_t count = be32(bytes, 4);
  if (bytes.size() < 8 + count) {
    throw DatasetError("label payload truncated: expected " + std::to_string(count) + " labels",
                       bytes.size());
  }
  if (bytes.size() > 8 + count) throw DatasetError("trailing bytes after label payload", 8 + count);
  IdxLabels labels;
  labels.values.assign(bytes.begin() + 8, bytes.end());
  for (std::size_t i = 0; i < count; ++i) {
    if (labels.values[i] > 9) {
      throw DatasetError("label " + std::to_string(labels.values[i]) + " out of range", 8 + i);
    }
  }
  return labels;
}

std::vector<std::uint8_t> read_maybe_gzip(const std::filesystem::path& path) {
  // gzread passes uncompressed files through unchanged.
  gzFile f = gzopen(path.string().c_str(), "rb");
  if (!f) throw DatasetError("cannot open " + path.string(), 0);
  std::vector<std::uint8_t> out;
  std::array<std::uint8_t, 1 << 16> buf{};
  for (;;) {
    const int n = gzread(f, buf.data(), static_cast<unsigned>(buf.size()));
    if (n < 0) {
      int err = 0;
      const std::string msg = gzerror(f, &err);
      gzclose(f);
      throw DatasetError("read error in " + path.string() + ": " + msg, out.size());
    }
    if (n == 0) break;
    out.insert(out.end(), buf.begin(), buf.begin() + n);
  }
  gzclose(f);
  return out;
}

IdxImages read_idx_images(const std::filesystem::path& path) {
  try {
    return parse_idx_images(read_maybe_gzip(path));
  } catch (const DatasetError& e) {
    throw DatasetError(path.filename().string() + ": " + e.message(), e.byte_offset());
  }
}

IdxLabels read_idx_labels(const std::filesystem::path& path) {
  try {
    return parse_idx_labels(read_maybe_gzip(path));
  } catch (const DatasetError& e) {
    throw DatasetError(path.filename().string() + ": " + e.message(), e.byte_offset());
  }
}

namespace {

std::filesystem::path locate(const std::filesystem::path& dir, const std::string& stem) {
  for (const char* suffix : {"", ".gz"}) {
    auto p = dir / (stem + suffix);
    if (std::filesystem::exists(p)) return p;
  }
  throw DatasetError("missing " + stem + "[.gz] in " + dir.string(), 0);
}

}  // namespace

MnistData load_mnist(const std::filesystem::path& dir) {
  // Find all four files before parsing any of them.
  const auto train_images = locate(dir, "train-images-idx3-ubyte");
  const auto train_labels = locate(dir, "train-labels-idx1-ubyte");
  const auto test_images = locate(dir, "t10k-images-idx3-ubyte");
  const auto test_labels = locate(dir, "t10k-labels-idx1-ubyte");
  MnistData d;
  d.train_images = read_idx_images(train_images);
  d.train_labels = read_idx_labels(train_labels);
  d.test_images = read_idx_images(test_images);
  d.test_labels = read_idx_labels(test_labels);
  if (d.train_images.count != d.train_labels.values.size() ||
      d.test_images.count != d.test_labels.values.size()) {
    throw DatasetError("image and label counts disagree", 4);
  }
  if (d.train_images.pixels_per_image() != d.test_images.pixels_per_image()) {
    throw DatasetError("train and test image sizes differ", 8);
  }
  return d;
}

}  // namespace stvo

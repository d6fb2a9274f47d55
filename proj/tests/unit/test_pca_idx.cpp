#include <catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <zlib.h>

#include "stvo/errors.hpp"
#include "stvo/idx.hpp"
#include "stvo/pca.hpp"

using namespace stvo;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace fs = std::filesystem;

namespace {

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) b.push_back(static_cast<std::uint8_t>(v >> shift));
}

std::vector<std::uint8_t> image_file(std::uint32_t count, std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint8_t> b;
  put_u32(b, 0x803);
  put_u32(b, count);
  put_u32(b, rows);
  put_u32(b, cols);
  for (std::uint32_t i = 0; i < count * rows * cols; ++i) b.push_back(static_cast<std::uint8_t>(i));
  return b;
}

std::vector<std::uint8_t> label_file(const std::vector<std::uint8_t>& labels) {
  std::vector<std::uint8_t> b;
  put_u32(b, 0x801);
  put_u32(b, static_cast<std::uint32_t>(labels.size()));
  b.insert(b.end(), labels.begin(), labels.end());
  return b;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("stvo_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_raw(const fs::path& p, const std::vector<std::uint8_t>& b) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

void write_gz(const fs::path& p, const std::vector<std::uint8_t>& b) {
  gzFile f = gzopen(p.string().c_str(), "wb");
  REQUIRE(f != nullptr);
  gzwrite(f, b.data(), static_cast<unsigned>(b.size()));
  gzclose(f);
}

std::uint64_t offset_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DatasetError& e) {
    return e.byte_offset();
  }
  FAIL("no DatasetError");
  return 0;
}

Eigen::MatrixXd gaussian(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(gen);
  return m;
}

}  // namespace

TEST_CASE("IDX images parse") {
  const auto img = parse_idx_images(image_file(3, 2, 4));
  CHECK(img.count == 3);
  CHECK(img.rows == 2);
  CHECK(img.cols == 4);
  CHECK(img.pixels_per_image() == 8);
  CHECK(img.pixels.size() == 24);
  CHECK(img.pixels[9] == 9);
}

TEST_CASE("IDX labels parse") {
  const auto lab = parse_idx_labels(label_file({3, 1, 4, 1, 5, 9}));
  CHECK(lab.values == std::vector<std::uint8_t>{3, 1, 4, 1, 5, 9});
}

TEST_CASE("IDX errors carry byte offsets") {
  auto bad_magic = image_file(1, 2, 2);
  bad_magic[3] = 0x01;
  CHECK(offset_of([&] { parse_idx_images(bad_magic); }) == 0);
  CHECK(offset_of([&] { parse_idx_labels(image_file(1, 2, 2)); }) == 0);

  const std::vector<std::uint8_t> short_header{0, 0, 8, 3, 0, 0};
  CHECK_THROWS_AS(parse_idx_images(short_header), DatasetError);

  auto truncated = image_file(2, 2, 2);
  truncated.resize(truncated.size() - 3);
  CHECK(offset_of([&] { parse_idx_images(truncated); }) > 0);

  auto trailing = image_file(1, 2, 2);
  trailing.push_back(0);
  CHECK(offset_of([&] { parse_idx_images(trailing); }) == 20);

  CHECK(offset_of([&] { parse_idx_labels(label_file({1, 2, 12})); }) == 10);
}

TEST_CASE("IDX files with and without gzip") {
  const auto dir = scratch_dir("idx");
  const auto bytes = image_file(2, 3, 3);
  write_raw(dir / "a.idx", bytes);
  write_gz(dir / "a.idx.gz", bytes);
  CHECK(read_maybe_gzip(dir / "a.idx") == bytes);
  CHECK(read_maybe_gzip(dir / "a.idx.gz") == bytes);
  CHECK(read_idx_images(dir / "a.idx.gz").pixels == parse_idx_images(bytes).pixels);
  CHECK_THROWS_AS(read_maybe_gzip(dir / "missing"), DatasetError);

  auto bad = bytes;
  bad[0] = 7;
  write_raw(dir / "bad.idx", bad);
  CHECK_THROWS_WITH(read_idx_images(dir / "bad.idx"), ContainsSubstring("bad.idx"));
  fs::remove_all(dir);
}

TEST_CASE("MNIST directory loader") {
  const auto dir = scratch_dir("mnist");
  write_gz(dir / "train-images-idx3-ubyte.gz", image_file(4, 2, 2));
  write_raw(dir / "train-labels-idx1-ubyte", label_file({0, 1, 2, 3}));
  write_raw(dir / "t10k-images-idx3-ubyte", image_file(2, 2, 2));
  CHECK_THROWS_WITH(load_mnist(dir), ContainsSubstring("t10k-labels-idx1-ubyte"));
  write_raw(dir / "t10k-labels-idx1-ubyte", label_file({5, 6, 7}));
  CHECK_THROWS_AS(load_mnist(dir), DatasetError);
  write_raw(dir / "t10k-labels-idx1-ubyte", label_file({5, 6}));
  const auto data = load_mnist(dir);
  CHECK(data.train_images.count == 4);
  CHECK(data.test_labels.values.size() == 2);
  fs::remove_all(dir);
}

TEST_CASE("PCA on a two-dimensional subspace") {
  const auto z = gaussian(500, 2, 1);
  const auto basis = gaussian(2, 10, 2);
  Eigen::MatrixXd x = z * basis;
  x.rowwise() += Eigen::RowVectorXd::LinSpaced(10, 1.0, 10.0);
  const auto model = fit_pca(x, 6);
  CHECK(model.n_components() == 6);
  CHECK(model.eigenvalues(0) >= model.eigenvalues(1));
  CHECK(model.eigenvalues(1) > 1e-3);
  for (Eigen::Index i = 2; i < 6; ++i) CHECK(model.eigenvalues(i) <= 1e-8);
  CHECK_THAT(model.cumulative_explained(), WithinAbs(1.0, 1e-10));
  const Eigen::MatrixXd gram = model.components * model.components.transpose();
  CHECK((gram - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("PCA with all components reconstructs the input") {
  const auto x = gaussian(200, 12, 3);
  const auto model = fit_pca(x, 12);
  const auto back = model.reconstruct(model.project(x));
  CHECK((back - x).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("PCA sign convention and ordering") {
  const auto x = gaussian(300, 8, 4);
  const auto model = fit_pca(x, 5);
  for (Eigen::Index i = 0; i < model.components.rows(); ++i) {
    Eigen::Index arg = 0;
    model.components.row(i).cwiseAbs().maxCoeff(&arg);
    CHECK(model.components(i, arg) > 0.0);
    if (i > 0) CHECK(model.eigenvalues(i) <= model.eigenvalues(i - 1));
  }
  CHECK(fit_pca(x, 5).components == model.components);
}

TEST_CASE("PCA projection is a contraction") {
  const auto x = gaussian(400, 20, 5);
  const auto model = fit_pca(x, 6);
  const auto f = model.project(x);
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<Eigen::Index> pick(0, x.rows() - 1);
  for (int t = 0; t < 500; ++t) {
    const auto i = pick(gen);
    const auto j = pick(gen);
    CHECK((f.row(i) - f.row(j)).norm() <= (x.row(i) - x.row(j)).norm() + 1e-12);
  }
}

TEST_CASE("PCA errors") {
  const Eigen::MatrixXd constant = Eigen::MatrixXd::Constant(10, 3, 2.0);
  CHECK_THROWS_AS(fit_pca(constant, 2), NumericError);
  CHECK_THROWS_AS(fit_pca(gaussian(10, 3, 1), 4), DimensionError);
  CHECK_THROWS_AS(fit_pca(gaussian(1, 3, 1), 1), DimensionError);
  const auto model = fit_pca(gaussian(10, 3, 1), 2);
  CHECK_THROWS_AS(model.project(gaussian(2, 4, 1)), DimensionError);
}

TEST_CASE("feature scaler maps the training range to [-1, 1]") {
  const auto f = gaussian(100, 4, 7);
  const auto scaler = FeatureScaler::fit(f);
  const auto g = scaler.apply(f);
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    CHECK_THAT(g.col(c).minCoeff(), WithinAbs(-1.0, 1e-12));
    CHECK_THAT(g.col(c).maxCoeff(), WithinAbs(1.0, 1e-12));
  }
  // Out-of-range rows are not clipped.
  Eigen::MatrixXd beyond = f.topRows(1);
  beyond(0, 0) = scaler.hi(0) + (scaler.hi(0) - scaler.lo(0));
  CHECK_THAT(scaler.apply(beyond)(0, 0), WithinAbs(3.0, 1e-12));
}

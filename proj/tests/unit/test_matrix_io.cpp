#include <catch_amalgamated.hpp>

#include <filesystem>
#include <sstream>

#include "stvo/errors.hpp"
#include "stvo/matrix_io.hpp"

using namespace stvo;

namespace fs = std::filesystem;

namespace {

Eigen::MatrixXd sample() {
  Eigen::MatrixXd m(3, 4);
  m << 1.0, -2.5, 1e-300, 3.0,
       0.1, 0.2, 0.3, 1.0 / 3.0,
       -7.0, 8.0, 9.0, 1e12;
  return m;
}

}  // namespace

TEST_CASE("binary round trip is exact") {
  std::stringstream buf;
  write_matrix_binary(buf, sample());
  CHECK(read_matrix_binary(buf) == sample());
}

TEST_CASE("csv round trip") {
  std::stringstream buf;
  buf << "# header comment\n";
  write_matrix_csv(buf, sample());
  CHECK(read_matrix_csv(buf) == sample());
}

TEST_CASE("malformed containers") {
  std::stringstream bad("XXXXX");
  CHECK_THROWS_AS(read_matrix_binary(bad), DatasetError);

  std::stringstream buf;
  write_matrix_binary(buf, sample());
  std::string bytes = buf.str();
  bytes.resize(bytes.size() - 8);
  std::stringstream cut(bytes);
  CHECK_THROWS_AS(read_matrix_binary(cut), DatasetError);

  std::stringstream ragged("1,2,3\n4,5\n");
  CHECK_THROWS_AS(read_matrix_csv(ragged), DimensionError);
  std::stringstream text("1,x\n");
  CHECK_THROWS_AS(read_matrix_csv(text), DimensionError);
}

TEST_CASE("files dispatch on extension") {
  const auto dir = fs::temp_directory_path() / "stvo_test_matrix";
  fs::create_directories(dir);
  save_matrix(dir / "m.bin", sample());
  save_matrix(dir / "m.csv", sample());
  CHECK(load_matrix(dir / "m.bin") == sample());
  CHECK(load_matrix(dir / "m.csv") == sample());
  CHECK_THROWS_AS(load_matrix(dir / "absent.bin"), Error);
  fs::remove_all(dir);
}

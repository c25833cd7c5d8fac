#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "fmlab/io.hpp"
#include "helpers.hpp"

using namespace fmlab;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_selftest_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

GridSignal random_payload(int L, double h, std::size_t channels, double origin,
                          std::uint64_t seed) {
  GridSignal f = make_signal(make_config(L, h), channels, origin);
  std::mt19937_64 rng(seed);
  for (auto& v : f.values)
    v = cplx{2.0 * testing::u01(rng) - 1.0, 2.0 * testing::u01(rng) - 1.0};
  return f;
}

void corrupt_byte(const std::string& path, std::size_t offset, char value) {
  std::fstream io(path, std::ios::binary | std::ios::in | std::ios::out);
  REQUIRE(io.good());
  io.seekp(static_cast<std::streamoff>(offset));
  io.put(value);
}

// the reader errors carry the reason and the offending path
template <typename Fn>
void expect_error(Fn&& fn, const std::string& fragment) {
  try {
    fn();
    FAIL_CHECK("expected a runtime_error mentioning '" << fragment << "'");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(fragment) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("binary signal round trip") {
  TempFile tmp("sig.bin");
  GridSignal f = random_payload(6, 0.125, 3, 0.0625, 42);
  write_signal(tmp.path, f);
  GridSignal g = read_signal(tmp.path);
  CHECK(g.config == f.config);
  CHECK(g.channels == f.channels);
  CHECK(g.origin == f.origin);
  CHECK(g.values == f.values);  // bit-exact
}

TEST_CASE("binary spectrum round trip") {
  TempFile tmp("spec.bin");
  GridSignal f = random_payload(5, 0.25, 2, 0.0, 9);
  Spectrum s = dft(f);
  write_spectrum(tmp.path, s);
  Spectrum t = read_spectrum(tmp.path);
  CHECK(t.config == s.config);
  CHECK(t.channels == s.channels);
  CHECK(t.origin == s.origin);
  CHECK(t.values == s.values);
}

TEST_CASE("domain flags are enforced") {
  TempFile tmp("mixed.bin");
  GridSignal f = random_payload(5, 0.25, 1, 0.0, 1);
  write_signal(tmp.path, f);
  expect_error([&] { read_spectrum(tmp.path); }, "expected frequency data");
  write_spectrum(tmp.path, dft(f));
  expect_error([&] { read_signal(tmp.path); }, "expected spatial data");
}

TEST_CASE("malformed binary files are rejected") {
  TempFile tmp("bad.bin");
  GridSignal f = random_payload(4, 0.5, 1, 0.0, 2);

  SUBCASE("missing file") {
    expect_error([&] { read_signal("io_selftest_does_not_exist.bin"); }, "cannot open");
  }

  SUBCASE("truncated header") {
    std::ofstream out(tmp.path, std::ios::binary);
    out.write("\x04\x00\x00", 3);
    out.close();
    expect_error([&] { read_signal(tmp.path); }, "truncated header");
  }

  SUBCASE("truncated payload") {
    write_signal(tmp.path, f);
    std::ifstream in(tmp.path, std::ios::binary);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    in.close();
    std::ofstream out(tmp.path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size() - 8));
    out.close();
    expect_error([&] { read_signal(tmp.path); }, "truncated payload");
  }

  SUBCASE("absurd level field") {
    write_signal(tmp.path, f);
    corrupt_byte(tmp.path, 0, 0x7f);  // L = 127: outside [0, 26]
    expect_error([&] { read_signal(tmp.path); }, "malformed header");
  }

  SUBCASE("bad domain flag") {
    write_signal(tmp.path, f);
    corrupt_byte(tmp.path, 32, 0x02);  // domain = 2
    expect_error([&] { read_signal(tmp.path); }, "malformed header");
  }
}

TEST_CASE("csv round trip recovers the grid") {
  TempFile tmp("sig.csv");
  GridSignal f = random_payload(5, 0.125, 2, 0.25, 7);
  write_signal_csv(tmp.path, f);
  GridSignal g = read_signal_csv(tmp.path);
  CHECK(g.config.L == f.config.L);
  CHECK(g.config.h == doctest::Approx(f.config.h).epsilon(1e-14));
  CHECK(g.channels == f.channels);
  CHECK(g.origin == doctest::Approx(f.origin).epsilon(1e-14));
  // %.17g preserves doubles exactly
  CHECK(g.values == f.values);
}

TEST_CASE("csv writer emits the documented shape") {
  TempFile tmp("shape.csv");
  GridSignal f = random_payload(3, 0.5, 2, 0.0, 5);
  write_signal_csv(tmp.path, f);
  std::ifstream in(tmp.path, std::ios::binary);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "index,x,re0,im0,re1,im1");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    CHECK(line.find('\r') == std::string::npos);  // LF only, even on exotic hosts
    ++rows;
  }
  CHECK(rows == f.n());
}

TEST_CASE("malformed csv files are rejected") {
  TempFile tmp("bad.csv");

  SUBCASE("empty file") {
    std::ofstream(tmp.path, std::ios::binary);
    expect_error([&] { read_signal_csv(tmp.path); }, "empty file");
  }

  SUBCASE("header without channel pairs") {
    std::ofstream out(tmp.path, std::ios::binary);
    out << "index,x,re0\n0,0,1\n";
    out.close();
    expect_error([&] { read_signal_csv(tmp.path); }, "malformed csv header");
  }

  SUBCASE("ragged row") {
    std::ofstream out(tmp.path, std::ios::binary);
    out << "index,x,re0,im0\n0,0.0,1.0,0.0\n1,0.5,2.0\n";
    out.close();
    expect_error([&] { read_signal_csv(tmp.path); }, "ragged csv row");
  }

  SUBCASE("row count must be a power of two") {
    std::ofstream out(tmp.path, std::ios::binary);
    out << "index,x,re0,im0\n";
    for (int i = 0; i < 3; ++i) out << i << ',' << 0.5 * i << ",1.0,0.0\n";
    out.close();
    expect_error([&] { read_signal_csv(tmp.path); }, "power of two");
  }

  SUBCASE("coordinates must increase uniformly") {
    std::ofstream out(tmp.path, std::ios::binary);
    out << "index,x,re0,im0\n0,0.0,1,0\n1,0.5,1,0\n2,1.2,1,0\n3,1.5,1,0\n";
    out.close();
    expect_error([&] { read_signal_csv(tmp.path); }, "nonuniform coordinates");
  }
}

TEST_CASE("save and load dispatch on the extension") {
  TempFile text("dispatch.csv");
  TempFile binary("dispatch.bin");
  GridSignal f = random_payload(4, 0.25, 1, 0.0, 3);
  save_signal(text.path, f);
  save_signal(binary.path, f);

  // the text artifact starts with the csv header, the binary one does not
  std::ifstream peek(text.path, std::ios::binary);
  std::string first;
  std::getline(peek, first);
  CHECK(first.rfind("index,x,", 0) == 0);

  CHECK(load_signal(text.path).values == f.values);
  CHECK(load_signal(binary.path).values == f.values);
  CHECK(load_signal(binary.path).config == f.config);
}

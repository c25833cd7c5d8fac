#include "fmlab/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fmlab {

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

void put_i64(std::ostream& out, std::int64_t v) {
  put_u64(out, static_cast<std::uint64_t>(v));
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  put_u64(out, bits);
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

std::int64_t get_i64(std::istream& in) {
  return static_cast<std::int64_t>(get_u64(in));
}

double get_f64(std::istream& in) {
  const std::uint64_t bits = get_u64(in);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void write_binary(const std::string& path, const GridConfig& config,
                  std::size_t channels, double origin, int domain,
                  const std::vector<cplx>& values) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  put_i64(out, config.L);
  put_f64(out, config.h);
  put_i64(out, static_cast<std::int64_t>(channels));
  put_f64(out, origin);
  put_i64(out, domain);
  for (const cplx& v : values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

struct RawSignal {
  GridConfig config;
  std::size_t channels = 1;
  double origin = 0.0;
  int domain = 0;
  std::vector<cplx> values;
};

RawSignal read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  RawSignal raw;
  const std::int64_t L = get_i64(in);
  const double h = get_f64(in);
  const std::int64_t d = get_i64(in);
  raw.origin = get_f64(in);
  raw.domain = static_cast<int>(get_i64(in));
  if (!in) throw std::runtime_error("truncated header: " + path);
  if (L < 0 || L > 26 || !(h > 0.0) || d < 1 || d > (std::int64_t{1} << 20) ||
      (raw.domain != 0 && raw.domain != 1))
    throw std::runtime_error("malformed header: " + path);
  raw.config = make_config(static_cast<int>(L), h);
  raw.channels = static_cast<std::size_t>(d);
  raw.values.resize(raw.channels * raw.config.n());
  for (cplx& v : raw.values) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v = cplx{re, im};
  }
  if (!in) throw std::runtime_error("truncated payload: " + path);
  return raw;
}

std::string field(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool ends_with_csv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

}  // namespace

void write_signal(const std::string& path, const GridSignal& f) {
  write_binary(path, f.config, f.channels, f.origin, 0, f.values);
}

GridSignal read_signal(const std::string& path) {
  RawSignal raw = read_binary(path);
  if (raw.domain != 0)
    throw std::runtime_error("expected spatial data: " + path);
  GridSignal f = make_signal(raw.config, raw.channels, raw.origin);
  f.values = std::move(raw.values);
  return f;
}

void write_spectrum(const std::string& path, const Spectrum& s) {
  write_binary(path, s.config, s.channels, s.origin, 1, s.values);
}

Spectrum read_spectrum(const std::string& path) {
  RawSignal raw = read_binary(path);
  if (raw.domain != 1)
    throw std::runtime_error("expected frequency data: " + path);
  Spectrum s = make_spectrum(raw.config, raw.channels, raw.origin);
  s.values = std::move(raw.values);
  return s;
}

void write_signal_csv(const std::string& path, const GridSignal& f) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF on every platform
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "index,x";
  for (std::size_t c = 0; c < f.channels; ++c)
    out << ",re" << c << ",im" << c;
  out << '\n';
  const std::size_t n = f.n();
  for (std::size_t j = 0; j < n; ++j) {
    out << j << ',' << field(f.coordinate(j));
    for (std::size_t c = 0; c < f.channels; ++c)
      out << ',' << field(f.at(c, j).real()) << ',' << field(f.at(c, j).imag());
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

GridSignal read_signal_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);

  std::size_t channels = 0;
  {
    std::size_t cols = 1;
    for (char ch : line)
      if (ch == ',') ++cols;
    if (cols < 4 || (cols - 2) % 2 != 0)
      throw std::runtime_error("malformed csv header: " + path);
    channels = (cols - 2) / 2;
  }

  std::vector<double> xs;
  std::vector<std::vector<cplx>> data(channels);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> fields;
    while (std::getline(row, cell, ',')) fields.push_back(std::stod(cell));
    if (fields.size() != 2 + 2 * channels)
      throw std::runtime_error("ragged csv row: " + path);
    xs.push_back(fields[1]);
    for (std::size_t c = 0; c < channels; ++c)
      data[c].emplace_back(fields[2 + 2 * c], fields[3 + 2 * c]);
  }

  const std::size_t n = xs.size();
  if (n < 2 || (n & (n - 1)) != 0)
    throw std::runtime_error("sample count must be a power of two: " + path);
  int L = 0;
  while ((std::size_t{1} << L) < n) ++L;
  const double h = xs[1] - xs[0];
  if (!(h > 0.0)) throw std::runtime_error("nonincreasing coordinates: " + path);
  for (std::size_t j = 1; j < n; ++j)
    if (std::abs(xs[j] - xs[0] - static_cast<double>(j) * h) > 1e-9 * h * n)
      throw std::runtime_error("nonuniform coordinates: " + path);

  GridSignal f = make_signal(make_config(L, h), channels, xs[0]);
  for (std::size_t c = 0; c < channels; ++c)
    for (std::size_t j = 0; j < n; ++j) f.at(c, j) = data[c][j];
  return f;
}

void save_signal(const std::string& path, const GridSignal& f) {
  if (ends_with_csv(path))
    write_signal_csv(path, f);
  else
    write_signal(path, f);
}

GridSignal load_signal(const std::string& path) {
  if (ends_with_csv(path)) return read_signal_csv(path);
  return read_signal(path);
}

}  // namespace fmlab

#include "ddshaper/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "ddshaper/errors.hpp"

namespace ddshaper {

static_assert(std::endian::native == std::endian::little, "waveform I/O assumes a little-endian host");

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_complex(cplx v) {
  std::string s = format_double(v.real());
  double im = v.imag();
  if (std::signbit(im)) {
    s += '-';
    s += format_double(-im);
  } else {
    s += '+';
    s += format_double(im);
  }
  s += 'j';
  return s;
}

namespace {

double parse_number(const std::string& text, const std::string& cell) {
  double v = 0.0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (!text.empty() && *b == '+') ++b;
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) throw DomainError("malformed complex cell: " + cell);
  return v;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

cplx parse_complex(const std::string& cell_in) {
  std::string cell = trim(cell_in);
  if (cell.size() < 2 || cell.back() != 'j') throw DomainError("malformed complex cell: " + cell);
  std::string body = cell.substr(0, cell.size() - 1);
  // Split at the last sign that is not leading and not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) throw DomainError("malformed complex cell: " + cell);
  double re = parse_number(body.substr(0, split), cell);
  double im = parse_number(body.substr(split), cell);
  return {re, im};
}

namespace {

template <class T>
void put(std::ostream& os, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  os.write(b, sizeof(T));
}

template <class T>
T get(std::istream& is) {
  char b[sizeof(T)];
  if (!is.read(b, sizeof(T))) throw DomainError("waveform: truncated file");
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

void write_waveform(std::ostream& os, const SampledSignal& s) {
  os.write("DDWV", 4);
  put<std::uint32_t>(os, 1u);
  put<std::uint64_t>(os, static_cast<std::uint64_t>(s.size()));
  put<double>(os, s.dt);
  put<double>(os, s.t0);
  for (const auto& v : s.samples) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
  if (!os) throw Error("waveform: write failed");
}

SampledSignal read_waveform(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "DDWV", 4) != 0) throw DomainError("waveform: bad magic");
  auto version = get<std::uint32_t>(is);
  if (version != 1u) throw DomainError("waveform: unsupported version");
  auto count = get<std::uint64_t>(is);
  SampledSignal s;
  s.dt = get<double>(is);
  s.t0 = get<double>(is);
  s.samples.resize(static_cast<std::size_t>(count));
  for (auto& v : s.samples) {
    double re = get<double>(is);
    double im = get<double>(is);
    v = {re, im};
  }
  return s;
}

void write_waveform_file(const std::string& path, const SampledSignal& s) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open for writing: " + path);
  write_waveform(os, s);
}

SampledSignal read_waveform_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open: " + path);
  return read_waveform(is);
}

void write_frame_csv(std::ostream& os, const ZakMatrix& X) {
  for (int l = 0; l < X.M; ++l) {
    for (int k = 0; k < X.N; ++k) {
      if (k) os << ',';
      os << format_complex(X.at(l, k));
    }
    os << '\n';
  }
}

ZakMatrix read_frame_csv(std::istream& is) {
  std::vector<std::vector<cplx>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    std::vector<cplx> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(parse_complex(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw DomainError("frame CSV: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.front().empty()) throw DomainError("frame CSV: empty");
  ZakMatrix X(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
  for (int l = 0; l < X.M; ++l)
    for (int k = 0; k < X.N; ++k) X.at(l, k) = rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(k)];
  return X;
}

std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw DomainError("config line " + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace ddshaper

#include <doctest.h>

#include <cstring>
#include <limits>
#include <sstream>

#include "ddshaper/errors.hpp"
#include "ddshaper/io.hpp"
#include "helpers.hpp"

using namespace ddshaper;
using namespace testutil;

TEST_CASE("doubles print with round-trip precision") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.0) == "-2");
  for (double v : {1.0 / 3.0, -1e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("complex cells") {
  CHECK(format_complex(cplx(1.5, -2.0)) == "1.5-2j");
  CHECK(format_complex(cplx(0.0, 0.25)) == "0+0.25j");
  for (cplx v : {cplx(1.0 / 3.0, -1e-17), cplx(-4.0, 7e10), cplx(0.0, 0.0)}) {
    CHECK(parse_complex(format_complex(v)) == v);
  }
  CHECK(parse_complex("  2.5e-3-1e2j ") == cplx(2.5e-3, -1e2));
  CHECK_THROWS_AS(parse_complex("3"), DomainError);
  CHECK_THROWS_AS(parse_complex("abc"), DomainError);
  CHECK_THROWS_AS(parse_complex("1+2"), DomainError);
}

TEST_CASE("waveform round trip is bit identical") {
  SampledSignal s = random_signal(37, -0.3125, 1.0 / 64.0, 9);
  std::stringstream ss;
  write_waveform(ss, s);
  const std::string bytes = ss.str();
  REQUIRE(bytes.size() == 32 + 16 * s.size());
  CHECK(bytes.substr(0, 4) == "DDWV");
  std::uint64_t count = 0;
  std::memcpy(&count, bytes.data() + 8, 8);
  CHECK(count == s.size());
  SampledSignal back = read_waveform(ss);
  CHECK(back.dt == s.dt);
  CHECK(back.t0 == s.t0);
  CHECK(back.samples == s.samples);
}

TEST_CASE("truncated or foreign waveform files are rejected") {
  SampledSignal s = random_signal(4, 0.0, 0.5, 1);
  std::stringstream ss;
  write_waveform(ss, s);
  std::string bytes = ss.str();
  std::stringstream cut(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_waveform(cut), DomainError);
  bytes[0] = 'X';
  std::stringstream bad(bytes);
  CHECK_THROWS_AS(read_waveform(bad), DomainError);
}

TEST_CASE("frame csv round trip") {
  ZakMatrix X(3, 5);
  X.values = random_vec(15, 4);
  std::stringstream ss;
  write_frame_csv(ss, X);
  ZakMatrix back = read_frame_csv(ss);
  CHECK(back.M == 3);
  CHECK(back.N == 5);
  CHECK(back.values == X.values);

  std::stringstream ragged("1+0j,2+0j\n3+0j\n");
  CHECK_THROWS_AS(read_frame_csv(ragged), DomainError);
  std::stringstream empty("");
  CHECK_THROWS_AS(read_frame_csv(empty), DomainError);
}

TEST_CASE("key value config") {
  std::stringstream ss("# comment\nM=16\n\n  preset = rrc_rrc  \nbeta=0.25 # trailing\n");
  auto kv = parse_key_values(ss);
  CHECK(kv.size() == 3);
  CHECK(kv.at("M") == "16");
  CHECK(kv.at("preset") == "rrc_rrc");
  CHECK(kv.at("beta") == "0.25");
  std::stringstream bad("M 16\n");
  CHECK_THROWS_AS(parse_key_values(bad), DomainError);
}

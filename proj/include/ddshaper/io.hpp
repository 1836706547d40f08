#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "ddshaper/types.hpp"

namespace ddshaper {

// 17 significant digits, '.' decimal point, independent of the C locale.
std::string format_double(double v);

// "re+imj" / "re-imj".
std::string format_complex(cplx v);
cplx parse_complex(const std::string& cell);

// Waveform file: 32-byte little-endian header {"DDWV", u32 version = 1,
// u64 sample_count, f64 dt, f64 t0} followed by interleaved f64 (re, im).
void write_waveform(std::ostream& os, const SampledSignal& s);
SampledSignal read_waveform(std::istream& is);
void write_waveform_file(const std::string& path, const SampledSignal& s);
SampledSignal read_waveform_file(const std::string& path);

// One CSV row per delay bin l, one column per Doppler bin k.
void write_frame_csv(std::ostream& os, const ZakMatrix& X);
ZakMatrix read_frame_csv(std::istream& is);

// key=value lines; '#' starts a comment; blank lines ignored.
std::map<std::string, std::string> parse_key_values(std::istream& is);

}  // namespace ddshaper

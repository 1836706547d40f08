#pragma once

#include <string>
#include <vector>

#include "ddshaper/types.hpp"
#include "ddshaper/windows.hpp"

namespace ddshaper {

enum class Constellation { qpsk };

struct DDSymbolFrame {
  ZakMatrix symbols;
  Constellation constellation = Constellation::qpsk;
};

// Unit-energy QPSK frame from a seed (deterministic).
DDSymbolFrame random_qpsk_frame(int M, int N, unsigned seed);

struct Path {
  cplx gain = 1.0;
  double delay = 0.0;
  double doppler = 0.0;
};
using PathSet = std::vector<Path>;

enum class Preset { sinc_sinc, rrc_rrc, cos_rrc, custom };

Preset parse_preset(const std::string& name);
std::string preset_name(Preset p);

struct ChainConfig {
  DDGrid grid;
  WindowSpec fw;
  WindowSpec tw;
  double cp_length = 1.0;
  Preset preset = Preset::custom;
  // Receive by sampling at the pulse instants (ideal Dirac basis) instead of
  // correlating with the transmitted truncated pulses.
  bool ideal_basis_rx = false;
};

// Window pair of a preset:
//   sinc_sinc  rect FW_F on [0, M/T) (unit-energy dual), rect TW on [-T/2, NT - T/2)
//   rrc_rrc    RRC-dual FW_F (orth T/M), RRC-dual TW (orth 1/(NT)) centred at (N-1)T/2
//   cos_rrc    RRC-dual FW_F (orth T/M), cos(2 pi t/T) TW on [-T/2, NT - T/2)
// Time windows peak at 1; cp_length defaults to T.
ChainConfig make_chain_config(Preset preset, const DDGrid& grid, double beta = 0.3);

void validate_chain(const ChainConfig& cfg);

// sqrt(NT) TW_T(t) sum_i x_T[i mod MN] FW_T(t - i T/M), x_T = idzt(frame),
// with the CP realized as a leading extension of the time window by cp_length.
SampledSignal shape_transmit(const DDSymbolFrame& frame, const ChainConfig& cfg);

// sum_p gain_p e^{j2pi nu_p (t - tau_p)} s(t - tau_p).
SampledSignal apply_paths(const SampledSignal& s, const PathSet& paths);

struct Reception {
  DDSymbolFrame frame;
  // Normalization divided out of the raw correlations.
  double gain = 1.0;
};

Reception matched_filter_receive(const SampledSignal& r, const ChainConfig& cfg);

struct EvmReport {
  double evm_db = 0.0;
  double ser = 0.0;
  cplx gain = 1.0;
};

inline constexpr double kEvmFloorDb = -120.0;
EvmReport evm_ser_report(const DDSymbolFrame& Y, const DDSymbolFrame& X);

// Y[l, k] for a single on-grid path of `bins` delay bins and gain g: the
// cyclic delay shift of X with the wrap phase e^{-j2pi k/N} per wrap.
ZakMatrix predict_delay_shift(const ZakMatrix& X, int bins, cplx g);

}  // namespace ddshaper

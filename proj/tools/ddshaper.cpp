#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "ddshaper/ambiguity.hpp"
#include "ddshaper/basis.hpp"
#include "ddshaper/errors.hpp"
#include "ddshaper/io.hpp"
#include "ddshaper/modem.hpp"
#include "ddshaper/verify.hpp"

using namespace ddshaper;

namespace {

// Raw command-line values; unset ones fall back to the config file, then to
// the preset defaults.
struct CommonFlags {
  std::optional<int> M, N, Q;
  std::optional<double> T, beta, cp;
  std::optional<std::string> preset, fw, tw, config;
  std::string out;
};

struct RunConfig {
  DDGrid grid;
  double beta = 0.3;
  ChainConfig chain;
  std::map<std::string, std::string> file;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--M", f.M, "delay bins per period (default 32)");
  app->add_option("--N", f.N, "Doppler bins per period (default 32)");
  app->add_option("--T", f.T, "delay period (default 1)");
  app->add_option("--Q", f.Q, "oversampling per delay bin (default 8)");
  app->add_option("--preset", f.preset, "sinc_sinc | rrc_rrc | cos_rrc | custom");
  app->add_option("--beta", f.beta, "RRC roll-off (default 0.3)");
  app->add_option("--cp", f.cp, "cyclic prefix length (default T)");
  app->add_option("--fw", f.fw, "custom frequency window: rect | rrc");
  app->add_option("--tw", f.tw, "custom time window: rect | rrc | cos");
  app->add_option("--config", f.config, "key=value file");
}

template <class V>
V pick(const std::optional<V>& flag, const std::map<std::string, std::string>& file, const std::string& key,
       V fallback) {
  if (flag) return *flag;
  auto it = file.find(key);
  if (it == file.end()) return fallback;
  if constexpr (std::is_same_v<V, std::string>) {
    return it->second;
  } else {
    std::istringstream is(it->second);
    is.imbue(std::locale::classic());
    V v{};
    if (!(is >> v) || !(is >> std::ws).eof()) throw DomainError("config: bad value for " + key + ": " + it->second);
    return v;
  }
}

RunConfig resolve(const CommonFlags& f) {
  RunConfig rc;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw Error("cannot read config file " + *f.config);
    rc.file = parse_key_values(in);
  }
  rc.grid.M = pick(f.M, rc.file, "M", 32);
  rc.grid.N = pick(f.N, rc.file, "N", 32);
  rc.grid.Q = pick(f.Q, rc.file, "Q", 8);
  rc.grid.T = pick(f.T, rc.file, "T", 1.0);
  rc.grid.validate();
  rc.beta = pick(f.beta, rc.file, "beta", 0.3);
  Preset p = parse_preset(pick(f.preset, rc.file, "preset", std::string("sinc_sinc")));
  rc.chain = make_chain_config(p, rc.grid, rc.beta);
  if (p == Preset::custom) {
    std::string fw = pick(f.fw, rc.file, "fw", std::string("rect"));
    std::string tw = pick(f.tw, rc.file, "tw", std::string("rect"));
    auto fw_from = [&](Preset q) { return make_chain_config(q, rc.grid, rc.beta).fw; };
    auto tw_from = [&](Preset q) { return make_chain_config(q, rc.grid, rc.beta).tw; };
    if (fw == "rect") rc.chain.fw = fw_from(Preset::sinc_sinc);
    else if (fw == "rrc") rc.chain.fw = fw_from(Preset::rrc_rrc);
    else throw DomainError("unknown frequency window: " + fw);
    if (tw == "rect") rc.chain.tw = tw_from(Preset::sinc_sinc);
    else if (tw == "rrc") rc.chain.tw = tw_from(Preset::rrc_rrc);
    else if (tw == "cos") rc.chain.tw = tw_from(Preset::cos_rrc);
    else throw DomainError("unknown time window: " + tw);
  }
  rc.chain.cp_length = pick(f.cp, rc.file, "cp", rc.grid.T);
  validate_chain(rc.chain);
  return rc;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  return os;
}

int cmd_ambiguity_cut(const CommonFlags& f, const std::string& cut, double span) {
  RunConfig rc = resolve(f);
  const DDGrid& g = rc.grid;
  if (!(span > 0.0)) throw DomainError("--span must be positive");
  SampledSignal p = truncated_basis_pulse(BasisId{0, 0}, g, rc.chain.fw, rc.chain.tw);
  const double dnu = 1.0 / (g.T * g.N * g.Q);
  const Axis tau = centred_axis(g.dt(), static_cast<std::size_t>(std::floor(span * g.T / g.dt() + 1e-9)));
  const Axis nu = centred_axis(dnu, static_cast<std::size_t>(std::floor(span / (g.T * dnu) + 1e-9)));
  std::ofstream os = open_out(f.out);
  if (cut == "surface") {
    AmbiguitySurface s = cross_ambiguity(p, p, tau, nu);
    os << "normalized_delay,normalized_doppler,re,im,mag,mag_db\n";
    for (std::size_t i = 0; i < tau.count; ++i) {
      for (std::size_t j = 0; j < nu.count; ++j) {
        cplx v = s.at(i, j) / s.peak_mag;
        double m = std::abs(v);
        double db = m > 0.0 ? std::max(20.0 * std::log10(m), kCutFloorDb) : kCutFloorDb;
        os << format_double(tau.at(i) / g.T) << ',' << format_double(nu.at(j) * g.T) << ','
           << format_double(v.real()) << ',' << format_double(v.imag()) << ',' << format_double(m) << ','
           << format_double(db) << '\n';
      }
    }
    return 0;
  }
  const bool zd = cut == "zero-doppler";
  AmbiguitySurface s = zd ? cross_ambiguity(p, p, tau, Axis{0.0, 1.0, 1})
                          : cross_ambiguity(p, p, Axis{0.0, 1.0, 1}, nu);
  Cut c = extract_cut(s, zd ? CutAxis::zero_doppler : CutAxis::zero_delay);
  const double peak = *std::max_element(c.mag.begin(), c.mag.end());
  os << "normalized_offset,re,im,mag,mag_db\n";
  for (std::size_t q = 0; q < c.offsets.size(); ++q) {
    double x = zd ? c.offsets[q] / g.T : c.offsets[q] * g.T;
    cplx v = c.values[q] / peak;
    os << format_double(x) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << ','
       << format_double(c.mag[q] / peak) << ',' << format_double(c.mag_db[q]) << '\n';
  }
  return 0;
}

// One path per line: gain,delay,doppler with the gain as re+imj.
PathSet read_paths(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  PathSet ps;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string g, d, v;
    if (!std::getline(ls, g, ',') || !std::getline(ls, d, ',') || !std::getline(ls, v)) {
      throw DomainError("paths: malformed line: " + line);
    }
    Path p;
    p.gain = parse_complex(g);
    try {
      p.delay = std::stod(d);
      p.doppler = std::stod(v);
    } catch (const std::exception&) {
      throw DomainError("paths: malformed line: " + line);
    }
    ps.push_back(p);
  }
  return ps;
}

int cmd_txchain(const CommonFlags& f, const std::string& in, const std::string& paths, const std::string& rx,
                const std::string& report, bool ideal) {
  RunConfig rc = resolve(f);
  rc.chain.ideal_basis_rx = ideal;
  std::ifstream fin(in);
  if (!fin) throw Error("cannot read " + in);
  DDSymbolFrame X;
  X.symbols = read_frame_csv(fin);
  if (X.symbols.M != rc.grid.M || X.symbols.N != rc.grid.N) {
    throw DomainError("frame is " + std::to_string(X.symbols.M) + "x" + std::to_string(X.symbols.N) +
                      ", grid is " + std::to_string(rc.grid.M) + "x" + std::to_string(rc.grid.N));
  }
  PathSet ps;
  if (!paths.empty()) {
    ps = read_paths(paths);
    for (const auto& p : ps) {
      if (p.delay < 0.0 || p.delay > rc.chain.cp_length + 1e-12 * rc.grid.T) {
        throw DomainError("path delay " + format_double(p.delay) + " exceeds the CP length " +
                          format_double(rc.chain.cp_length));
      }
    }
  }
  SampledSignal s = shape_transmit(X, rc.chain);
  {
    std::ofstream os = open_out(f.out);
    write_waveform(os, s);
  }
  if (rx.empty()) return 0;
  SampledSignal r = ps.empty() ? s : apply_paths(s, ps);
  Reception y = matched_filter_receive(r, rc.chain);
  {
    std::ofstream os = open_out(rx);
    write_frame_csv(os, y.frame.symbols);
  }
  EvmReport rep = evm_ser_report(y.frame, X);
  std::ostringstream kv;
  kv << "evm_db=" << format_double(rep.evm_db) << '\n'
     << "ser=" << format_double(rep.ser) << '\n'
     << "gain=" << format_complex(rep.gain) << '\n'
     << "rx_normalization=" << format_double(y.gain) << '\n';
  if (report.empty()) {
    std::cout << kv.str();
  } else {
    std::ofstream os = open_out(report);
    os << kv.str();
  }
  return 0;
}

int cmd_verify(const CommonFlags& f, const std::string& suite, unsigned seed, std::optional<double> tol) {
  std::map<std::string, std::string> file;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw Error("cannot read config file " + *f.config);
    file = parse_key_values(in);
  }
  VerifyOptions opt;
  auto opt_int = [&](const std::optional<int>& v, const std::string& key) -> std::optional<int> {
    if (v) return v;
    if (file.count(key)) return pick(std::optional<int>{}, file, key, 0);
    return std::nullopt;
  };
  opt.M = opt_int(f.M, "M");
  opt.N = opt_int(f.N, "N");
  opt.Q = opt_int(f.Q, "Q");
  opt.T = pick(f.T, file, "T", 1.0);
  opt.beta = pick(f.beta, file, "beta", 0.3);
  opt.seed = seed;
  opt.tol = tol;
  const auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw DomainError("unknown suite: " + suite);
  std::vector<CheckRow> rows = run_suite(suite, opt);
  if (f.out.empty() || f.out == "-") {
    write_rows_csv(std::cout, rows);
  } else {
    std::ofstream os = open_out(f.out);
    write_rows_csv(os, rows);
  }
  bool ok = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-Doppler waveform toolkit"};
  app.require_subcommand(1);

  CommonFlags cut_flags;
  std::string cut = "zero-doppler";
  double span = 0.5;
  auto* cut_cmd = app.add_subcommand("ambiguity-cut", "ambiguity cut of the (0,0) truncated basis pulse as CSV");
  add_common(cut_cmd, cut_flags);
  cut_cmd->add_option("--cut", cut, "zero-doppler | zero-delay | surface")
      ->check(CLI::IsMember({"zero-doppler", "zero-delay", "surface"}));
  cut_cmd->add_option("--span", span, "half width of the axes in normalized units (default 0.5)");
  cut_cmd->add_option("--out", cut_flags.out, "output CSV")->required();

  CommonFlags tx_flags;
  std::string tx_in, tx_paths, tx_rx, tx_report;
  bool tx_ideal = false;
  auto* tx_cmd = app.add_subcommand("txchain", "shape a DD frame, optionally pass it through paths and receive it");
  add_common(tx_cmd, tx_flags);
  tx_cmd->add_option("--in", tx_in, "frame CSV (M rows, N columns)")->required();
  tx_cmd->add_option("--out", tx_flags.out, "waveform file")->required();
  tx_cmd->add_option("--paths", tx_paths, "path CSV: gain,delay,doppler per line");
  tx_cmd->add_option("--rx", tx_rx, "received frame CSV");
  tx_cmd->add_option("--report", tx_report, "key=value report file (default stdout)");
  tx_cmd->add_flag("--ideal-rx", tx_ideal, "sample at the pulse instants instead of matched filtering");

  CommonFlags v_flags;
  std::string suite = "all";
  unsigned seed = 12345;
  std::optional<double> tol;
  auto* v_cmd = app.add_subcommand("verify", "numerical property suites; exit 0 iff every row passes");
  add_common(v_cmd, v_flags);
  v_cmd->add_option("--suite", suite, "lemmas | theorem1 | theorem2 | theorem3 | corollary1 | figures | loopback | all");
  v_cmd->add_option("--seed", seed, "random seed");
  v_cmd->add_option("--tol", tol, "override every row tolerance");
  v_cmd->add_option("--out", v_flags.out, "report CSV (default stdout)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (cut_cmd->parsed()) return cmd_ambiguity_cut(cut_flags, cut, span);
    if (tx_cmd->parsed()) return cmd_txchain(tx_flags, tx_in, tx_paths, tx_rx, tx_report, tx_ideal);
    if (v_cmd->parsed()) return cmd_verify(v_flags, suite, seed, tol);
  } catch (const std::exception& e) {
    std::cerr << "ddshaper: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

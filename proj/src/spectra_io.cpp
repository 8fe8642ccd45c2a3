#include "cmpol/spectra_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "cmpol/constants.hpp"
#include "cmpol/errors.hpp"

namespace cmpol {

namespace {

constexpr const char* file_magic = "# cmpol spectra v1";

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ostream& os, const std::string& config_echo) {
  os << file_magic << "\n";
  os << "# sigma_convention: sigma = -h0_sign (coupling maximal at phi = -90 deg for +z bias)\n";
  if (!config_echo.empty()) os << "# config: " << config_echo << "\n";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, std::size_t lineno) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0'))
    throw ParseError("line " + std::to_string(lineno) + ": bad number '" + tok + "'");
  return v;
}

double freq_scale(const std::string& col) {
  if (col == "freq_hz") return two_pi;
  if (col == "freq_mhz") return two_pi * 1e6;
  if (col == "freq_ghz") return two_pi * 1e9;
  if (col == "freq_rad_s") return 1.0;
  return 0.0;
}

}  // namespace

void write_map_csv(const std::string& path, const SpectralMap& map,
                   const std::string& config_echo) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  write_header(os, config_echo);
  os << map.axis1_name << "," << map.axis2_name << "," << map.value_name;
  if (map.has_phase()) os << ",phase_rad";
  os << "\n";
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < map.cols(); ++j) {
      os << fmt17(map.axis1[i]) << "," << fmt17(map.axis2[j]) << ","
         << fmt17(map.values[i * map.cols() + j]);
      if (map.has_phase()) os << "," << fmt17(map.phase[i * map.cols() + j]);
      os << "\n";
    }
  }
}

void write_spectrum_csv(const std::string& path, const ComplexSpectrum& spectrum,
                        const std::string& config_echo) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  write_header(os, config_echo);
  os << "freq_rad_s,mag,phase_rad\n";
  for (std::size_t i = 0; i < spectrum.freq.size(); ++i)
    os << fmt17(spectrum.freq[i]) << "," << fmt17(std::abs(spectrum.s11[i])) << ","
       << fmt17(std::arg(spectrum.s11[i])) << "\n";
}

void write_map_pgm(const std::string& path, const SpectralMap& map) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open for writing: " + path);
  double lo = map.values[0], hi = map.values[0];
  for (double v : map.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double span = hi - lo;
  os << "P2\n" << map.cols() << " " << map.rows() << "\n255\n";
  for (std::size_t i = 0; i < map.rows(); ++i) {
    for (std::size_t j = 0; j < map.cols(); ++j) {
      const double v = map.values[i * map.cols() + j];
      const int g = span > 0 ? static_cast<int>(std::lround((v - lo) / span * 255.0)) : 0;
      os << g << (j + 1 < map.cols() ? " " : "\n");
    }
  }
}

std::vector<ComplexSpectrum> ingest_spectra(const std::string& path,
                                            const std::string& format) {
  if (format != "csv")
    throw std::invalid_argument("ingest_spectra: unsupported format '" + format + "'");
  std::ifstream is(path);
  if (!is) throw Error("cannot open for reading: " + path);

  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> cols;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    cols = split_csv(line);
    break;
  }
  if (cols.empty()) throw UnitError(path + ": no column header found");

  // Identify the layout from the header names.
  int freq_col = -1;
  double fscale = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const double sc = freq_scale(cols[i]);
    if (sc > 0) {
      freq_col = static_cast<int>(i);
      fscale = sc;
      break;
    }
  }
  if (freq_col < 0)
    throw UnitError(path + ": no frequency column with declared units "
                           "(freq_hz/freq_mhz/freq_ghz/freq_rad_s)");
  if (freq_col > 1) throw UnitError(path + ": frequency column must be first or second");
  const bool grouped = freq_col == 1;
  const std::size_t vcol = static_cast<std::size_t>(freq_col) + 1;
  bool complex_re_im = false;
  bool has_phase = false;
  if (vcol < cols.size() && cols[vcol] == "re") {
    if (vcol + 1 >= cols.size() || cols[vcol + 1] != "im")
      throw UnitError(path + ": 're' column without matching 'im'");
    complex_re_im = true;
  } else if (vcol < cols.size() &&
             (cols[vcol] == "mag" || cols[vcol] == "s11_mag")) {
    has_phase = vcol + 1 < cols.size() && cols[vcol + 1] == "phase_rad";
  } else {
    throw UnitError(path + ": value columns must be mag[,phase_rad] or re,im");
  }
  const std::size_t ncols = vcol + (complex_re_im || has_phase ? 2 : 1);
  if (cols.size() != ncols)
    throw UnitError(path + ": unexpected trailing columns after the value columns");

  struct Row {
    double key;
    double freq;
    std::complex<double> val;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> toks = split_csv(line);
    if (toks.size() != ncols)
      throw ParseError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(ncols) + " columns, got " + std::to_string(toks.size()));
    Row r{};
    r.key = grouped ? parse_double(toks[0], lineno) : 0.0;
    r.freq = parse_double(toks[static_cast<std::size_t>(freq_col)], lineno) * fscale;
    if (complex_re_im) {
      r.val = {parse_double(toks[vcol], lineno), parse_double(toks[vcol + 1], lineno)};
    } else {
      const double mag = parse_double(toks[vcol], lineno);
      const double ph = has_phase ? parse_double(toks[vcol + 1], lineno) : 0.0;
      r.val = std::polar(mag, ph);
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  // Group by axis1 in order of first appearance, frequency-sorted within each.
  std::vector<ComplexSpectrum> out;
  std::map<double, std::size_t> index;
  for (const Row& r : rows) {
    auto [it, inserted] = index.try_emplace(r.key, out.size());
    if (inserted) {
      out.emplace_back();
      out.back().label = grouped ? fmt17(r.key) : "";
    }
    ComplexSpectrum& spec = out[it->second];
    spec.freq.push_back(r.freq);
    spec.s11.push_back(r.val);
  }
  for (ComplexSpectrum& spec : out) {
    std::vector<std::size_t> order(spec.freq.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return spec.freq[a] < spec.freq[b]; });
    ComplexSpectrum sorted;
    sorted.label = spec.label;
    sorted.freq.reserve(order.size());
    sorted.s11.reserve(order.size());
    for (std::size_t idx : order) {
      sorted.freq.push_back(spec.freq[idx]);
      sorted.s11.push_back(spec.s11[idx]);
    }
    spec = sorted;
  }
  return out;
}

}  // namespace cmpol

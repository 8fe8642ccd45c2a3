#pragma once

#include <string>
#include <vector>

#include "cmpol/spectra.hpp"

namespace cmpol {

/// Write a sweep map as CSV: '#'-prefixed header block (format version, sigma
/// convention, full config echo), a column-name line, then rows
/// axis1,axis2,mag[,phase] serialised with 17 significant digits so binary64
/// round-trips exactly.
void write_map_csv(const std::string& path, const SpectralMap& map,
                   const std::string& config_echo);

/// Write a single spectrum as CSV with columns freq_rad_s,mag,phase_rad.
void write_spectrum_csv(const std::string& path, const ComplexSpectrum& spectrum,
                        const std::string& config_echo);

/// Quick-look portable greymap (P2): rows follow axis1, columns axis2, values
/// scaled linearly to 0..255 over the map's min..max.
void write_map_pgm(const std::string& path, const SpectralMap& map);

/// Parse a spectra CSV back into frequency-sorted complex spectra.
///
/// The column-name line declares the units; recognised layouts are
///   freq_<unit>,mag[,phase_rad]          one spectrum
///   freq_<unit>,re,im                    one spectrum
///   <axis1>,freq_<unit>,mag[,phase_rad]  one spectrum per distinct axis1
/// with <unit> one of hz, mhz, ghz, rad_s. A missing or unrecognised header
/// throws UnitError; malformed rows throw ParseError naming the line.
std::vector<ComplexSpectrum> ingest_spectra(const std::string& path,
                                            const std::string& format = "csv");

}  // namespace cmpol

// io.hpp — Grid persistence: a bit-exact binary container for pattern and
// spectrum grids, plus gnuplot-ready CSV exports.

#pragma once

#include <string>
#include <vector>

#include "lzsm/analytic.hpp"
#include "lzsm/spectra.hpp"

namespace lzsm::io {

// Binary container, little-endian throughout:
//   "LZSM" | version u32 | flag u8 (0 = real pattern, 1 = complex spectrum)
//   | n_eps u32 | n_A u32 | eps axis f64[] | A axis f64[]
//   | values f64[] row-major, eps slow (complex interleaved re, im)
//   | payload-specific trailer | provenance u32 length + bytes.
// Doubles are stored as raw IEEE-754 bit patterns: write -> read is the
// identity on every field.
void write_pattern(const std::string& path, const spectra::PatternGrid& grid);
spectra::PatternGrid read_pattern(const std::string& path);

void write_spectrum(const std::string& path, const spectra::SpectrumGrid& s);
spectra::SpectrumGrid read_spectrum(const std::string& path);

// CSV exports: '#'-prefixed comment block echoing the provenance/config,
// then a header line naming the columns.
void write_pattern_csv(const std::string& path,
                       const spectra::PatternGrid& grid);
void write_spectrum_csv(const std::string& path,
                        const spectra::SpectrumGrid& s);
void write_arcs_csv(const std::string& path,
                    const std::vector<analytic::ArcCurve>& arcs,
                    const std::string& comment = {});
void write_profile_csv(const std::string& path,
                       const spectra::ArcProfile& profile,
                       const std::string& comment = {});

}  // namespace lzsm::io

#pragma once

#include <string>

#include "fmlab/grid.hpp"

namespace fmlab {

// Binary layout, little-endian, 40-byte header then payload:
//   int64   L          log2 sample count
//   float64 h          sample spacing
//   int64   d          channel count
//   float64 origin     left endpoint of the sampling window
//   int64   domain     0 = spatial samples, 1 = frequency samples
// followed by d * 2^L complex samples, row-major by channel, each a
// (re, im) pair of float64.
void write_signal(const std::string& path, const GridSignal& f);
GridSignal read_signal(const std::string& path);
void write_spectrum(const std::string& path, const Spectrum& s);
Spectrum read_spectrum(const std::string& path);

// Text form: header "index,x,re0,im0,..." then one row per sample with
// %.17g fields, LF line endings.  The reader recovers the grid from the
// coordinate column and requires a power-of-two row count.
void write_signal_csv(const std::string& path, const GridSignal& f);
GridSignal read_signal_csv(const std::string& path);

// dispatch on the file extension: .csv is text, anything else binary
void save_signal(const std::string& path, const GridSignal& f);
GridSignal load_signal(const std::string& path);

}  // namespace fmlab

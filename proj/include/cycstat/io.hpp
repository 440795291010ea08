#ifndef CYCSTAT_IO_HPP
#define CYCSTAT_IO_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cycstat/estimator.hpp"
#include "cycstat/reference.hpp"
#include "cycstat/types.hpp"

namespace cycstat {

// ---------------------------------------------------------------------------
// Sample interchange: headerless interleaved float32 little-endian I/Q pairs
// ("<name>.cf32"), byte order fixed regardless of host, with a flat JSON
// sidecar at "<name>.meta.json" carrying the recording parameters.
// ---------------------------------------------------------------------------

/// Writes interleaved binary32 LE pairs; returns the byte count (8/sample).
/// @throws DataError on non-finite samples; IoError on unwritable paths.
std::size_t write_cf32(const std::string& path, const std::vector<cx>& samples);

/// Reads a cf32 file back to complex doubles.
/// @throws IoError on unreadable paths; FormatError when the byte length is
///         not a multiple of 8.
std::vector<cx> read_cf32(const std::string& path);

/// Recording sidecar. Unknown keys survive a read/write roundtrip: they are
/// kept as raw JSON value text keyed by name.
struct RecordingMeta {
    double sample_rate_hz = 0.0; ///< required, > 0
    std::string description;    ///< omitted from the file when empty
    std::optional<std::uint64_t> seed;
    std::optional<double> center_freq_hz;
    std::map<std::string, std::string> extra; ///< key -> raw JSON value

    double sample_period_s() const { return 1.0 / sample_rate_hz; }
};

/// Writes the sidecar for the record at `path` (appends ".meta.json").
/// @throws UsageError on invalid meta; IoError on unwritable paths;
///         FormatError naming any extra key whose value is not valid JSON.
void write_meta(const std::string& path, const RecordingMeta& meta);

/// Reads the sidecar for the record at `path` (appends ".meta.json").
/// @throws IoError on unreadable paths; FormatError on malformed documents,
///         a missing/invalid sample_rate_hz, or wrongly typed known keys.
RecordingMeta read_meta(const std::string& path);

// ---------------------------------------------------------------------------
// CSV export. Numbers carry 17 significant digits so a CSV roundtrip is
// lossless for doubles. Returned counts are data rows (header excluded).
// Schemas:
//   frames:            frame_index,alpha,lag,re,im,mag
//   magnitude average: alpha,lag,mean_mag
//   coherent average:  alpha,lag,mean_re,mean_im,mean_mag
//   oracle table:      alpha,lag,mean_mag,trials
// Full-mode rows map each DFT bin to its cycle frequency via
// full_bin_to_alpha; rows follow the frame's flat layout order.
// ---------------------------------------------------------------------------

/// @throws UsageError on empty input, mixed layouts, or a config that does
///         not match the frames; IoError on unwritable paths.
std::size_t export_frames_csv(const std::string& path,
                              const std::vector<CyclicFrame>& frames,
                              const EstimatorConfig& cfg);

/// Export of average_frames output (values must match cfg's layout length).
std::size_t export_average_csv(const std::string& path, const std::vector<cx>& avg,
                               const EstimatorConfig& cfg, AverageMode mode);

std::size_t export_oracle_csv(const std::string& path, const OracleTable& table);

} // namespace cycstat

#endif

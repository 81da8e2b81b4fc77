#pragma once

#include "stochwave/waveform.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string_view>
#include <variant>

namespace stochwave {

enum class WaveformKind : std::uint32_t { discrete = 0, periodic = 1, vector = 2, continuous = 3 };

std::string_view to_string(WaveformKind kind);
WaveformKind parse_waveform_kind(std::string_view name);

using AnyWaveform = std::variant<DiscreteWaveform, PeriodicWaveform, VectorWaveform, ContinuousWaveform>;

WaveformKind kind_of(const AnyWaveform& w);

enum class FormatErrorCode { bad_magic, truncated, kind_mismatch, malformed, io };

class FormatError : public std::runtime_error {
 public:
  FormatError(FormatErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  FormatErrorCode code() const { return code_; }

 private:
  FormatErrorCode code_;
};

/// Binary layout, all fields little-endian:
///
///   offset  size  field
///        0     8  magic "STOCHWV1"
///        8     4  kind (u32, WaveformKind)
///       12     4  distribution (u32, DistributionKind)
///       16     8  n, number of stored phases (u64)
///       24     8  epsilon (f64)
///       32     8  sigma (f64)
///       40     8  seed (u64)
///       48     8  aux (f64): d for vector, dt for continuous, 0 otherwise
///       56   8*n  phases (f64)
///
/// Vector waveforms store the phases of their base discrete waveform.
inline constexpr std::string_view binary_magic = "STOCHWV1";
inline constexpr std::size_t binary_header_size = 56;

void write_binary(const AnyWaveform& w, std::ostream& out);
AnyWaveform read_binary(std::istream& in);

/// CSV: "# stochwave-schema v1", a "# kind=... dist=... sigma=... epsilon=...
/// seed=... aux=..." line, the header "index,phase,re,im", then one row per
/// stored phase. Phases are printed with 17 significant digits so reading
/// the file back is bit-exact.
void write_csv(const AnyWaveform& w, std::ostream& out);
AnyWaveform read_csv(std::istream& in);

enum class WaveformFormat { csv, binary };

void save_waveform(const AnyWaveform& w, const std::filesystem::path& path, WaveformFormat format);
/// Detects the format from the leading bytes.
AnyWaveform load_waveform(const std::filesystem::path& path);

/// Loads and checks the stored kind; throws FormatError(kind_mismatch).
template <typename W>
W load_waveform_as(const std::filesystem::path& path) {
  AnyWaveform any = load_waveform(path);
  if (auto* w = std::get_if<W>(&any)) return std::move(*w);
  throw FormatError(FormatErrorCode::kind_mismatch,
                    "waveform file holds a " + std::string(to_string(kind_of(any))) + " waveform");
}

}  // namespace stochwave

#include "stochwave/waveform_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace stochwave {

namespace {

struct Header {
  WaveformKind kind = WaveformKind::discrete;
  DistributionKind dist = DistributionKind::gaussian;
  double epsilon = 1.0;
  double sigma = 1.0;
  std::uint64_t seed = 0;
  double aux = 0.0;
};

Header header_of(const AnyWaveform& any) {
  Header h;
  h.kind = kind_of(any);
  const WaveformParams& p = std::visit(
      [](const auto& w) -> const WaveformParams& {
        if constexpr (std::is_same_v<std::decay_t<decltype(w)>, VectorWaveform>) return w.base().params();
        else return w.params();
      },
      any);
  h.dist = p.dist.kind();
  h.epsilon = p.epsilon;
  h.sigma = p.dist.scale();
  h.seed = p.seed;
  if (const auto* v = std::get_if<VectorWaveform>(&any)) h.aux = static_cast<double>(v->dimension());
  if (const auto* c = std::get_if<ContinuousWaveform>(&any)) h.aux = c->dt();
  return h;
}

const std::vector<double>& phases_of(const AnyWaveform& any) {
  return std::visit(
      [](const auto& w) -> const std::vector<double>& {
        if constexpr (std::is_same_v<std::decay_t<decltype(w)>, VectorWaveform>) return w.base().phases();
        else return w.phases();
      },
      any);
}

AnyWaveform assemble(const Header& h, std::vector<double> phases) {
  WaveformParams params;
  params.epsilon = h.epsilon;
  params.seed = h.seed;
  try {
    params.validate();
    params.dist = Distribution::make(h.dist, h.sigma);
    if (phases.empty()) throw std::invalid_argument("no phases");
    switch (h.kind) {
      case WaveformKind::discrete: return DiscreteWaveform(std::move(phases), params);
      case WaveformKind::periodic: return PeriodicWaveform(std::move(phases), params);
      case WaveformKind::vector: {
        const auto d = static_cast<Index>(h.aux);
        if (static_cast<double>(d) != h.aux) throw std::invalid_argument("vector dimension is not integral");
        return VectorWaveform(DiscreteWaveform(std::move(phases), params), d);
      }
      case WaveformKind::continuous: return ContinuousWaveform(std::move(phases), h.aux, params);
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(FormatErrorCode::malformed, std::string("invalid waveform record: ") + e.what());
  }
  throw FormatError(FormatErrorCode::malformed, "unknown waveform kind");
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes.data(), 8);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> bytes;
  for (int i = 0; i < 4; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes.data(), 4);
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_le(const unsigned char* p, int width) {
  std::uint64_t v = 0;
  for (int i = width - 1; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double parse_double(std::string_view text) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError(FormatErrorCode::malformed, "bad number '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::string_view to_string(WaveformKind kind) {
  switch (kind) {
    case WaveformKind::discrete: return "discrete";
    case WaveformKind::periodic: return "periodic";
    case WaveformKind::vector: return "vector";
    case WaveformKind::continuous: return "continuous";
  }
  return "unknown";
}

WaveformKind parse_waveform_kind(std::string_view name) {
  if (name == "discrete") return WaveformKind::discrete;
  if (name == "periodic") return WaveformKind::periodic;
  if (name == "vector") return WaveformKind::vector;
  if (name == "continuous") return WaveformKind::continuous;
  throw std::invalid_argument("unknown waveform kind '" + std::string(name) +
                              "' (expected discrete|periodic|vector|continuous)");
}

WaveformKind kind_of(const AnyWaveform& w) { return static_cast<WaveformKind>(w.index()); }

void write_binary(const AnyWaveform& w, std::ostream& out) {
  const Header h = header_of(w);
  const auto& phases = phases_of(w);
  out.write(binary_magic.data(), static_cast<std::streamsize>(binary_magic.size()));
  put_u32(out, static_cast<std::uint32_t>(h.kind));
  put_u32(out, static_cast<std::uint32_t>(h.dist));
  put_u64(out, phases.size());
  put_f64(out, h.epsilon);
  put_f64(out, h.sigma);
  put_u64(out, h.seed);
  put_f64(out, h.aux);
  for (double p : phases) put_f64(out, p);
  if (!out) throw FormatError(FormatErrorCode::io, "failed writing binary waveform");
}

AnyWaveform read_binary(std::istream& in) {
  std::array<unsigned char, binary_header_size> raw{};
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got < binary_magic.size() || std::memcmp(raw.data(), binary_magic.data(), binary_magic.size()) != 0)
    throw FormatError(FormatErrorCode::bad_magic, "not a stochwave binary waveform (bad magic)");
  if (got < raw.size()) throw FormatError(FormatErrorCode::truncated, "truncated binary waveform header");

  Header h;
  const auto kind = static_cast<std::uint32_t>(get_le(raw.data() + 8, 4));
  const auto dist = static_cast<std::uint32_t>(get_le(raw.data() + 12, 4));
  if (kind > 3 || dist > 2) throw FormatError(FormatErrorCode::malformed, "unknown kind or distribution code");
  h.kind = static_cast<WaveformKind>(kind);
  h.dist = static_cast<DistributionKind>(dist);
  const std::uint64_t count = get_le(raw.data() + 16, 8);
  h.epsilon = std::bit_cast<double>(get_le(raw.data() + 24, 8));
  h.sigma = std::bit_cast<double>(get_le(raw.data() + 32, 8));
  h.seed = get_le(raw.data() + 40, 8);
  h.aux = std::bit_cast<double>(get_le(raw.data() + 48, 8));
  if (count == 0 || count > (std::uint64_t{1} << 40))
    throw FormatError(FormatErrorCode::malformed, "implausible phase count");

  std::vector<double> phases(static_cast<std::size_t>(count));
  std::array<unsigned char, 8> buf{};
  for (auto& p : phases) {
    in.read(reinterpret_cast<char*>(buf.data()), 8);
    if (in.gcount() != 8) throw FormatError(FormatErrorCode::truncated, "truncated binary waveform payload");
    p = std::bit_cast<double>(get_le(buf.data(), 8));
  }
  return assemble(h, std::move(phases));
}

void write_csv(const AnyWaveform& w, std::ostream& out) {
  const Header h = header_of(w);
  out << "# stochwave-schema v1\n";
  out << "# kind=" << to_string(h.kind) << " dist=" << to_string(h.dist)
      << " sigma=" << format_double(h.sigma) << " epsilon=" << format_double(h.epsilon)
      << " seed=" << h.seed << " aux=" << format_double(h.aux) << "\n";
  out << "index,phase,re,im\n";
  const auto& phases = phases_of(w);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const Complex z = phasor(phases[i]);
    out << i << ',' << format_double(phases[i]) << ',' << format_double(z.real()) << ','
        << format_double(z.imag()) << '\n';
  }
  if (!out) throw FormatError(FormatErrorCode::io, "failed writing CSV waveform");
}

AnyWaveform read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# stochwave-schema", 0) != 0)
    throw FormatError(FormatErrorCode::bad_magic, "missing '# stochwave-schema' line");
  if (line != "# stochwave-schema v1")
    throw FormatError(FormatErrorCode::malformed, "unsupported schema: " + line);
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
    throw FormatError(FormatErrorCode::truncated, "missing metadata line");

  std::map<std::string, std::string, std::less<>> meta;
  std::istringstream fields(line.substr(2));
  for (std::string field; fields >> field;) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw FormatError(FormatErrorCode::malformed, "bad metadata field " + field);
    meta[field.substr(0, eq)] = field.substr(eq + 1);
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = meta.find(key);
    if (it == meta.end()) throw FormatError(FormatErrorCode::malformed, std::string("missing metadata ") + key);
    return it->second;
  };
  Header h;
  try {
    h.kind = parse_waveform_kind(need("kind"));
    h.dist = parse_distribution_kind(need("dist"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(FormatErrorCode::malformed, e.what());
  }
  h.sigma = parse_double(need("sigma"));
  h.epsilon = parse_double(need("epsilon"));
  h.aux = parse_double(need("aux"));
  {
    const std::string& s = need("seed");
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), h.seed);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw FormatError(FormatErrorCode::malformed, "bad seed");
  }
  if (!std::getline(in, line) || line != "index,phase,re,im")
    throw FormatError(FormatErrorCode::truncated, "missing CSV column header");

  std::vector<double> phases;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw FormatError(FormatErrorCode::malformed, "bad CSV row: " + line);
    if (parse_double(std::string_view(line).substr(0, c1)) != static_cast<double>(phases.size()))
      throw FormatError(FormatErrorCode::malformed, "CSV rows out of order");
    phases.push_back(parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1)));
  }
  return assemble(h, std::move(phases));
}

void save_waveform(const AnyWaveform& w, const std::filesystem::path& path, WaveformFormat format) {
  std::ofstream out(path, format == WaveformFormat::binary ? std::ios::binary : std::ios::out);
  if (!out) throw FormatError(FormatErrorCode::io, "cannot open " + path.string() + " for writing");
  if (format == WaveformFormat::binary) write_binary(w, out);
  else write_csv(w, out);
}

AnyWaveform load_waveform(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(FormatErrorCode::io, "cannot open " + path.string());
  const int first = in.peek();
  if (first == '#') return read_csv(in);
  return read_binary(in);
}

}  // namespace stochwave

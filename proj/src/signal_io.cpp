#include "ordspec/signal_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "ordspec/error.hpp"

namespace ordspec {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end;
}

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::vector<unsigned char>& buf, std::uint16_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xff));
  buf.push_back(static_cast<unsigned char>(v >> 8));
}

void put32(std::vector<unsigned char>& buf, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) buf.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

Signal read_csv_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());

  Signal signal;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    double v = 0.0;
    if (!parse_double(text, v)) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw DataError(where(path, lineno) + ": not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) {
      throw DataError(where(path, lineno) + ": non-finite sample '" + std::string(text) + "'");
    }
    seen_content = true;
    signal.samples.push_back(v);
  }
  if (in.bad()) throw DataError("read error on " + path.string());
  if (signal.samples.empty()) throw DataError(path.string() + ": no samples");
  return signal;
}

Signal read_wav_signal(const std::filesystem::path& path, std::size_t channel) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                         std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError(name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Tolerate a truncated data chunk (common with streamed recorders).
      if (std::memcmp(chunk, "data", 4) != 0) throw DataError(name + ": truncated chunk");
    }
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (avail < 16) throw DataError(name + ": malformed fmt chunk");
      const unsigned char* f = bytes.data() + body;
      format = le16(f);
      channels = le16(f + 2);
      sample_rate = le32(f + 4);
      bits = le16(f + 14);
      if (format == kFormatExtensible) {
        if (avail < 26) throw DataError(name + ": malformed extensible fmt chunk");
        format = le16(f + 24);  // first two bytes of the subformat GUID
      }
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw DataError(name + ": missing fmt chunk");
  if (!data) throw DataError(name + ": missing data chunk");
  if (format != kFormatPcm) {
    throw DataError(name + ": unsupported WAV encoding (format tag " + std::to_string(format) +
                    "); only PCM is supported");
  }
  if (bits != 16) {
    throw DataError(name + ": unsupported bit depth " + std::to_string(bits) +
                    "; only 16-bit PCM is supported");
  }
  if (channels == 0) throw DataError(name + ": zero channels");
  if (channel >= channels) {
    throw DataError(name + ": channel " + std::to_string(channel) + " out of range (file has " +
                    std::to_string(channels) + ")");
  }

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t frames = data_size / frame_bytes;
  Signal signal;
  signal.sample_rate_hz = static_cast<double>(sample_rate);
  signal.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const auto raw = static_cast<std::int16_t>(le16(data + i * frame_bytes + 2 * channel));
    signal.samples[i] = static_cast<double>(raw) / 32768.0;
  }
  if (signal.samples.empty()) throw DataError(name + ": no samples");
  return signal;
}

void write_wav_pcm16(const std::filesystem::path& path, std::span<const std::int16_t> interleaved,
                     std::uint16_t channels, std::uint32_t sample_rate) {
  if (channels == 0) throw std::invalid_argument("WAV needs at least one channel");
  const auto data_bytes = static_cast<std::uint32_t>(interleaved.size() * 2);
  std::vector<unsigned char> buf;
  buf.reserve(44 + data_bytes);
  buf.insert(buf.end(), {'R', 'I', 'F', 'F'});
  put32(buf, 36 + data_bytes);
  buf.insert(buf.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put32(buf, 16);
  put16(buf, kFormatPcm);
  put16(buf, channels);
  put32(buf, sample_rate);
  put32(buf, sample_rate * channels * 2u);
  put16(buf, static_cast<std::uint16_t>(channels * 2u));
  put16(buf, 16);
  buf.insert(buf.end(), {'d', 'a', 't', 'a'});
  put32(buf, data_bytes);
  for (std::int16_t s : interleaved) put16(buf, static_cast<std::uint16_t>(s));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
}

Signal read_signal(const std::filesystem::path& path, std::size_t channel) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".wav") return read_wav_signal(path, channel);
  return read_csv_signal(path);
}

}  // namespace ordspec

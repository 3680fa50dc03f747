#pragma once

#include <cstdint>
#include <filesystem>
#include <span>

#include "ordspec/spectrum.hpp"

namespace ordspec {

// One sample per line. A non-numeric first line is treated as a header;
// blank lines are skipped. Errors are DataError with "path:line" context.
Signal read_csv_signal(const std::filesystem::path& path);

// RIFF/WAVE, 16-bit PCM only. Samples are scaled by 1/32768 into [-1, 1).
Signal read_wav_signal(const std::filesystem::path& path, std::size_t channel = 0);

// Interleaved 16-bit PCM writer; used to build fixtures.
void write_wav_pcm16(const std::filesystem::path& path, std::span<const std::int16_t> interleaved,
                     std::uint16_t channels, std::uint32_t sample_rate);

// Dispatches on the extension: .wav -> read_wav_signal, anything else -> CSV.
Signal read_signal(const std::filesystem::path& path, std::size_t channel = 0);

}  // namespace ordspec

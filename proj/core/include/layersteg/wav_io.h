// Copyright 2026 The LayerSteg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// RIFF/WAVE PCM reader and writer (format code 1, 8- and 16-bit).

#ifndef LAYERSTEG_WAV_IO_H_
#define LAYERSTEG_WAV_IO_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "layersteg/bitplane.h"

namespace layersteg {

// Interleaved PCM samples. 8-bit samples are unsigned [0, 255]; 16-bit
// samples are signed [-32768, 32767].
struct AudioBuffer {
  std::vector<Sample> samples;
  BitDepth bit_depth = BitDepth::k16;
  std::uint32_t sample_rate = 44100;
  std::uint16_t channels = 1;

  friend bool operator==(const AudioBuffer&, const AudioBuffer&) = default;
};

// Throws StegError(kInvalidArgument) if `buffer` breaks an invariant
// (sample out of range, channels == 0, length not a multiple of channels).
void ValidateAudioBuffer(const AudioBuffer& buffer);

// Unknown chunks are skipped. Throws StegError with kMalformedContainer,
// kUnsupportedFormat or kTruncatedData. Never crashes on arbitrary input.
AudioBuffer ParseWav(std::span<const std::uint8_t> bytes);

// Canonical output: "RIFF" header, 16-byte fmt chunk, data chunk (plus one
// pad byte when the data size is odd).
std::vector<std::uint8_t> WriteWav(const AudioBuffer& buffer);

// Whole-file helpers. I/O failures throw std::runtime_error.
std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes);

}  // namespace layersteg

#endif  // LAYERSTEG_WAV_IO_H_

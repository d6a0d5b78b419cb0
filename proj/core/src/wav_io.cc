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

#include "layersteg/wav_io.h"

#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>

#include "layersteg/error.h"

namespace layersteg {
namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t LoadU16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t LoadU32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

bool TagIs(const std::uint8_t* p, const char (&tag)[5]) {
  return std::memcmp(p, tag, 4) == 0;
}

void StoreU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void StoreU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

void StoreTag(std::vector<std::uint8_t>& out, const char (&tag)[5]) {
  out.insert(out.end(), tag, tag + 4);
}

[[noreturn]] void Malformed(const std::string& what) {
  throw StegError(ErrorCode::kMalformedContainer, what);
}

struct FormatChunk {
  BitDepth depth;
  std::uint16_t channels;
  std::uint32_t sample_rate;
};

FormatChunk ParseFormat(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) Malformed("fmt chunk shorter than 16 bytes");
  const std::uint16_t format = LoadU16(p);
  const std::uint16_t channels = LoadU16(p + 2);
  const std::uint32_t rate = LoadU32(p + 4);
  const std::uint16_t block_align = LoadU16(p + 12);
  const std::uint16_t bits = LoadU16(p + 14);
  if (format != kFormatPcm) {
    throw StegError(ErrorCode::kUnsupportedFormat,
                    "format code " + std::to_string(format) +
                        " is not PCM (1)");
  }
  const BitDepth depth = BitDepthFromBits(bits);
  if (channels == 0) Malformed("fmt chunk declares zero channels");
  if (block_align != channels * (bits / 8)) {
    Malformed("block align " + std::to_string(block_align) +
              " inconsistent with " + std::to_string(channels) +
              " channels of " + std::to_string(bits) + " bits");
  }
  return {depth, channels, rate};
}

}  // namespace

void ValidateAudioBuffer(const AudioBuffer& buffer) {
  if (buffer.channels == 0) {
    throw StegError(ErrorCode::kInvalidArgument, "channels must be >= 1");
  }
  if (buffer.samples.size() % buffer.channels != 0) {
    throw StegError(ErrorCode::kInvalidArgument,
                    "sample count not a multiple of channel count");
  }
  for (Sample s : buffer.samples) {
    if (!InRange(s, buffer.bit_depth)) {
      throw StegError(ErrorCode::kInvalidArgument,
                      "sample " + std::to_string(s) + " out of range");
    }
  }
}

AudioBuffer ParseWav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12) Malformed("file shorter than a RIFF header");
  const std::uint8_t* base = bytes.data();
  if (!TagIs(base, "RIFF")) Malformed("missing RIFF magic");
  if (!TagIs(base + 8, "WAVE")) Malformed("missing WAVE form type");
  if (LoadU32(base + 4) < 4) Malformed("RIFF size too small");

  std::optional<FormatChunk> format;
  std::size_t offset = 12;
  const std::size_t end = bytes.size();
  while (true) {
    if (end - offset < 8) Malformed("no data chunk");
    const std::uint8_t* header = base + offset;
    const std::uint32_t size = LoadU32(header + 4);
    const std::size_t body = offset + 8;
    const std::size_t available = end - body;

    if (TagIs(header, "data")) {
      if (!format) Malformed("data chunk before fmt chunk");
      if (size > available) {
        throw StegError(ErrorCode::kTruncatedData,
                        "data chunk declares " + std::to_string(size) +
                            " bytes, " + std::to_string(available) +
                            " present");
      }
      const std::size_t bytes_per_sample = BitWidth(format->depth) / 8;
      const std::size_t frame = bytes_per_sample * format->channels;
      if (size % frame != 0) {
        Malformed("data size " + std::to_string(size) +
                  " is not a whole number of frames");
      }
      AudioBuffer out;
      out.bit_depth = format->depth;
      out.channels = format->channels;
      out.sample_rate = format->sample_rate;
      out.samples.reserve(size / bytes_per_sample);
      const std::uint8_t* p = base + body;
      if (format->depth == BitDepth::k8) {
        for (std::size_t i = 0; i < size; ++i) out.samples.push_back(p[i]);
      } else {
        for (std::size_t i = 0; i < size; i += 2) {
          out.samples.push_back(FromRaw(LoadU16(p + i), BitDepth::k16));
        }
      }
      return out;
    }

    if (size > available) {
      Malformed("chunk '" + std::string(header, header + 4) +
                "' runs past end of file");
    }
    if (TagIs(header, "fmt ")) {
      if (format) Malformed("duplicate fmt chunk");
      format = ParseFormat(base + body, size);
    }
    // Chunks are word aligned; a missing final pad byte is tolerated.
    offset = body + size + (size & 1u);
    if (offset > end) offset = end;
  }
}

std::vector<std::uint8_t> WriteWav(const AudioBuffer& buffer) {
  ValidateAudioBuffer(buffer);
  const std::uint16_t bytes_per_sample =
      static_cast<std::uint16_t>(BitWidth(buffer.bit_depth) / 8);
  const auto data_size =
      static_cast<std::uint32_t>(buffer.samples.size() * bytes_per_sample);
  const std::uint32_t pad = data_size & 1u;
  const std::uint16_t block_align =
      static_cast<std::uint16_t>(buffer.channels * bytes_per_sample);

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size + pad);
  StoreTag(out, "RIFF");
  StoreU32(out, 36 + data_size + pad);
  StoreTag(out, "WAVE");
  StoreTag(out, "fmt ");
  StoreU32(out, 16);
  StoreU16(out, kFormatPcm);
  StoreU16(out, buffer.channels);
  StoreU32(out, buffer.sample_rate);
  StoreU32(out, buffer.sample_rate * block_align);
  StoreU16(out, block_align);
  StoreU16(out, static_cast<std::uint16_t>(BitWidth(buffer.bit_depth)));
  StoreTag(out, "data");
  StoreU32(out, data_size);
  if (buffer.bit_depth == BitDepth::k8) {
    for (Sample s : buffer.samples) out.push_back(static_cast<std::uint8_t>(s));
  } else {
    for (Sample s : buffer.samples) {
      StoreU16(out, static_cast<std::uint16_t>(ToRaw(s, BitDepth::k16)));
    }
  }
  if (pad) out.push_back(0);
  return out;
}

std::vector<std::uint8_t> ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return bytes;
}

void WriteFileBytes(const std::filesystem::path& path,
                    std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace layersteg

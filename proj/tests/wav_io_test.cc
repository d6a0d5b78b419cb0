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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "layersteg/error.h"
#include "test_util.h"

namespace layersteg {
namespace {

using Bytes = std::vector<std::uint8_t>;

void Put16(Bytes& b, std::uint16_t v) {
  b.push_back(v & 0xFF);
  b.push_back(v >> 8);
}
void Put32(Bytes& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xFF);
}
void PutTag(Bytes& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

// Hand-assembled file, independent of WriteWav.
Bytes HandMadeWav(std::uint16_t format, std::uint16_t channels,
                  std::uint32_t rate, std::uint16_t bits, const Bytes& data,
                  std::uint32_t declared_data_size) {
  Bytes b;
  PutTag(b, "RIFF");
  Put32(b, 36 + static_cast<std::uint32_t>(data.size()));
  PutTag(b, "WAVE");
  PutTag(b, "fmt ");
  Put32(b, 16);
  Put16(b, format);
  Put16(b, channels);
  Put32(b, rate);
  Put32(b, rate * channels * bits / 8);
  Put16(b, static_cast<std::uint16_t>(channels * bits / 8));
  Put16(b, bits);
  PutTag(b, "data");
  Put32(b, declared_data_size);
  b.insert(b.end(), data.begin(), data.end());
  return b;
}

Bytes HandMadeWav(std::uint16_t channels, std::uint16_t bits,
                  const Bytes& data) {
  return HandMadeWav(1, channels, 8000, bits, data,
                     static_cast<std::uint32_t>(data.size()));
}

TEST(ParseWavTest, EmptyDataChunk) {
  const Bytes file = HandMadeWav(1, 8, {});
  ASSERT_EQ(file.size(), 44u);
  const AudioBuffer buffer = ParseWav(file);
  EXPECT_TRUE(buffer.samples.empty());
  EXPECT_EQ(buffer.bit_depth, BitDepth::k8);
  EXPECT_EQ(buffer.channels, 1);
  EXPECT_EQ(buffer.sample_rate, 8000u);
}

TEST(ParseWavTest, EightBitMidpoint) {
  EXPECT_EQ(ParseWav(HandMadeWav(1, 8, {0x80})).samples,
            std::vector<Sample>{128});
}

TEST(ParseWavTest, SixteenBitLittleEndian) {
  EXPECT_EQ(ParseWav(HandMadeWav(1, 16, {0xFF, 0x7F})).samples,
            std::vector<Sample>{32767});
  EXPECT_EQ(ParseWav(HandMadeWav(1, 16, {0x00, 0x80})).samples,
            std::vector<Sample>{-32768});
}

// Every 16-bit value: the writer's bytes equal a hand-computed two's
// complement little-endian pair, and the parser inverts them.
TEST(WavCodecTest, AllSixteenBitValues) {
  AudioBuffer buffer;
  buffer.bit_depth = BitDepth::k16;
  for (int v = -32768; v <= 32767; ++v) buffer.samples.push_back(v);
  const Bytes file = WriteWav(buffer);
  ASSERT_EQ(file.size(), 44u + 2u * 65536u);
  for (std::size_t i = 0; i < buffer.samples.size(); ++i) {
    const int v = buffer.samples[i];
    const unsigned pattern = v < 0 ? static_cast<unsigned>(v + 65536)
                                   : static_cast<unsigned>(v);
    ASSERT_EQ(file[44 + 2 * i], pattern & 0xFF);
    ASSERT_EQ(file[44 + 2 * i + 1], pattern >> 8);
  }
  EXPECT_EQ(ParseWav(file), buffer);
}

TEST(WriteWavTest, EmptyEightBitMono) {
  AudioBuffer buffer;
  buffer.bit_depth = BitDepth::k8;
  buffer.sample_rate = 8000;
  const Bytes file = WriteWav(buffer);
  EXPECT_EQ(file, HandMadeWav(1, 8, {}));
}

TEST(WriteWavTest, MinusOneIsAllOnes) {
  AudioBuffer buffer;
  buffer.samples = {-1};
  const Bytes file = WriteWav(buffer);
  ASSERT_EQ(file.size(), 46u);
  EXPECT_EQ(file[44], 0xFF);
  EXPECT_EQ(file[45], 0xFF);
}

TEST(WriteWavTest, RejectsInvalidBuffers) {
  AudioBuffer buffer;
  buffer.bit_depth = BitDepth::k8;
  buffer.samples = {256};
  EXPECT_THROW(WriteWav(buffer), StegError);
  buffer.samples = {1, 2, 3};
  buffer.channels = 2;
  EXPECT_THROW(WriteWav(buffer), StegError);
}

TEST(ParseWavTest, SkipsUnknownChunks) {
  Bytes file = HandMadeWav(1, 8, {1, 2, 3});
  Bytes list;
  PutTag(list, "LIST");
  Put32(list, 3);
  list.insert(list.end(), {'a', 'b', 'c', 0});  // odd size plus pad byte
  file.insert(file.begin() + 12, list.begin(), list.end());
  const AudioBuffer buffer = ParseWav(file);
  EXPECT_EQ(buffer.samples, (std::vector<Sample>{1, 2, 3}));
  // The canonical re-encoding drops the extra chunk.
  EXPECT_EQ(WriteWav(buffer), WriteWav(ParseWav(WriteWav(buffer))));
  EXPECT_EQ(WriteWav(buffer).size(), 44u + 4u);
}

ErrorCode ParseError(const Bytes& file) {
  try {
    ParseWav(file);
  } catch (const StegError& e) {
    return e.code();
  }
  ADD_FAILURE() << "ParseWav accepted the input";
  return ErrorCode::kInvalidArgument;
}

TEST(ParseWavTest, ErrorPaths) {
  EXPECT_EQ(ParseError({}), ErrorCode::kMalformedContainer);
  Bytes bad_magic = HandMadeWav(1, 8, {});
  bad_magic[0] = 'X';
  EXPECT_EQ(ParseError(bad_magic), ErrorCode::kMalformedContainer);
  Bytes bad_form = HandMadeWav(1, 8, {});
  bad_form[8] = 'X';
  EXPECT_EQ(ParseError(bad_form), ErrorCode::kMalformedContainer);
  // IEEE float format code 3.
  EXPECT_EQ(ParseError(HandMadeWav(3, 1, 8000, 16, {0, 0}, 2)),
            ErrorCode::kUnsupportedFormat);
  EXPECT_EQ(ParseError(HandMadeWav(1, 24, {0, 0, 0})),
            ErrorCode::kUnsupportedFormat);
  // Declares 10 bytes, holds 2.
  EXPECT_EQ(ParseError(HandMadeWav(1, 1, 8000, 16, {0, 0}, 10)),
            ErrorCode::kTruncatedData);
  // Half a 16-bit sample.
  EXPECT_EQ(ParseError(HandMadeWav(1, 1, 8000, 16, {0}, 1)),
            ErrorCode::kMalformedContainer);
  // Header only, no data chunk.
  Bytes no_data = HandMadeWav(1, 8, {});
  no_data.resize(36);
  EXPECT_EQ(ParseError(no_data), ErrorCode::kMalformedContainer);
}

TEST(WavRoundTripTest, RandomBuffers) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 300; ++trial) {
    const AudioBuffer buffer = testing_util::RandomBuffer(
        gen, trial % 2 ? BitDepth::k8 : BitDepth::k16,
        static_cast<std::uint16_t>(1 + trial % 2), gen() % 2000);
    const Bytes file = WriteWav(buffer);
    ASSERT_EQ(ParseWav(file), buffer);
    // Canonicalization is idempotent.
    ASSERT_EQ(WriteWav(ParseWav(file)), file);
  }
}

// Arbitrary bytes and mutated valid files either parse or throw StegError.
TEST(WavFuzzTest, NeverCrashes) {
  std::mt19937_64 gen(4242);
  AudioBuffer seed_buffer =
      testing_util::RandomBuffer(gen, BitDepth::k16, 2, 64);
  const Bytes valid = WriteWav(seed_buffer);
  int parsed = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    Bytes input;
    if (trial % 2 == 0) {
      input.resize(gen() % 128);
      for (auto& b : input) b = static_cast<std::uint8_t>(gen());
      if (trial % 4 == 0 && input.size() >= 12) {
        std::copy(valid.begin(), valid.begin() + 12, input.begin());
      }
    } else {
      input = valid;
      const int edits = 1 + static_cast<int>(gen() % 4);
      for (int e = 0; e < edits; ++e) {
        input[gen() % input.size()] = static_cast<std::uint8_t>(gen());
      }
      if (gen() % 3 == 0) input.resize(gen() % input.size());
    }
    try {
      const AudioBuffer buffer = ParseWav(input);
      ValidateAudioBuffer(buffer);
      ++parsed;
    } catch (const StegError&) {
    }
  }
  EXPECT_GT(parsed, 0);
}

}  // namespace
}  // namespace layersteg

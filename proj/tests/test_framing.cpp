// Copyright 2026 The AIFV Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "aifv/aifv.hpp"
#include "fixtures.hpp"

namespace aifv {
namespace {

ErrorCode error_of(const Bytes& b) {
  try {
    read_container(b);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "container accepted";
  return ErrorCode::kParse;
}

TEST(EliasDelta, Examples) {
  EXPECT_EQ(to_string(elias_delta_encode(1)), "1");
  EXPECT_EQ(to_string(elias_delta_encode(2)), "0100");
  EXPECT_EQ(to_string(elias_delta_encode(17)), "001010001");
  EXPECT_EQ(elias_delta_decode(parse_codeword("001010001")), 17u);
  EXPECT_EQ(elias_delta_encode(UINT64_MAX).size(), 64u + 6 + 6);
  EXPECT_EQ(elias_delta_decode(elias_delta_encode(UINT64_MAX)), UINT64_MAX);
}

TEST(EliasDelta, RoundTrip) {
  std::mt19937_64 rng(1);
  for (uint64_t n = 1; n < 2000; ++n) EXPECT_EQ(elias_delta_decode(elias_delta_encode(n)), n);
  for (int i = 0; i < 2000; ++i) {
    uint64_t n = rng() >> (rng() % 64);
    if (n == 0) continue;
    EXPECT_EQ(elias_delta_decode(elias_delta_encode(n)), n);
  }
}

TEST(EliasDelta, Errors) {
  auto code_of = [](const std::string& bits) {
    try {
      elias_delta_decode(parse_codeword(bits));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kParse;
  };
  EXPECT_THROW(elias_delta_encode(0), Error);
  EXPECT_EQ(code_of(""), ErrorCode::kInvalidPrefix);
  EXPECT_EQ(code_of("010"), ErrorCode::kInvalidPrefix);
  EXPECT_EQ(code_of("11"), ErrorCode::kInvalidPrefix);
  EXPECT_EQ(code_of("00000000"), ErrorCode::kInvalidPrefix);
  EXPECT_EQ(code_of("2"), ErrorCode::kInvalidPrefix);
}

TEST(Packing, Examples) {
  EXPECT_EQ(pack_symbols(parse_codeword("1010"), 2), (Bytes{0xA0}));
  EXPECT_EQ(pack_symbols(parse_codeword("111111110"), 2), (Bytes{0xFF, 0x00}));
  auto t = pack_symbols(parse_codeword("221201120"), 3);
  EXPECT_EQ(std::string(t.begin(), t.end()), "221201120");
  EXPECT_EQ(unpack_symbols(Bytes{0xA0}, 2, 4), parse_codeword("1010"));
  EXPECT_TRUE(pack_symbols({}, 2).empty());
  EXPECT_THROW(pack_symbols(parse_codeword("3"), 3), Error);
  EXPECT_THROW(unpack_symbols(Bytes{'3'}, 3, 1), Error);
  EXPECT_THROW(unpack_symbols(Bytes{0xA0}, 2, 9), Error);
}

TEST(Packing, RandomRoundTrips) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 10000; ++i) {
    const int K = 2 + static_cast<int>(rng() % 6);
    Codeword s(rng() % 40);
    for (auto& x : s) x = static_cast<CodeSymbol>(rng() % static_cast<uint64_t>(K));
    auto packed = pack_symbols(s, K);
    EXPECT_EQ(packed.size(), packed_size(s.size(), K));
    ASSERT_EQ(unpack_symbols(packed, K, s.size()), s);
  }
}

TEST(Container, TernaryLengthFraming) {
  auto code = fixtures::ternary_five();
  auto bytes = write_container(code, char_labels("cdebac"), Framing::kLength);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "AIFV");
  EXPECT_EQ(bytes[4], kContainerVersion);
  EXPECT_EQ(bytes[5], 3);
  EXPECT_EQ(bytes[6], 1);
  EXPECT_EQ(bytes[7], 0);
  auto tail = std::string(bytes.end() - 9, bytes.end());
  EXPECT_EQ(tail, "221201120");
  auto c = read_container(bytes);
  EXPECT_EQ(labels_of(c.code, c.message), char_labels("cdebac"));
  EXPECT_EQ(to_string(c.payload), "221201120");
  EXPECT_EQ(c.code, code);
}

TEST(Container, BinaryPayload) {
  auto code = fixtures::binary_master_root();
  auto bytes = write_container(code, char_labels("aaab"), Framing::kLength);
  EXPECT_EQ(bytes.back(), 0xA0);
  EXPECT_EQ(bytes[bytes.size() - 9], 4);  // payload symbol count, low byte
  auto c = read_container(bytes);
  EXPECT_EQ(labels_of(c.code, c.message), char_labels("aaab"));
  EXPECT_EQ(to_string(c.payload), "1010");
}

TEST(Container, EmptyMessage) {
  auto code = fixtures::binary_four();
  auto c = read_container(write_container(code, std::vector<int>{}, Framing::kLength));
  EXPECT_TRUE(c.message.empty());
  EXPECT_TRUE(c.payload.empty());
}

TEST(Container, EofFraming) {
  auto dist = with_eof(fixtures::four_skewed());
  const int eof = static_cast<int>(dist.size()) - 1;
  EXPECT_EQ(dist.labels().back(), kEofLabel);
  EXPECT_EQ(dist.prob(static_cast<size_t>(eof)), default_eof_probability());
  auto code = optimize(dist, Family::binary(), {.leaf_only = {eof}}).code;
  std::vector<int> msg{0, 1, 2, 3, 2, 2, 0, 1};
  auto bytes = write_container(code, msg, Framing::kEof);
  EXPECT_EQ(bytes[7], 1);
  auto c = read_container(bytes);
  EXPECT_EQ(c.message, msg);
  EXPECT_EQ(c.framing, Framing::kEof);
  EXPECT_TRUE(read_container(write_container(code, std::vector<int>{}, Framing::kEof)).message.empty());
  EXPECT_THROW(write_container(code, std::vector<int>{0, eof}, Framing::kEof), Error);
  EXPECT_THROW(write_container(fixtures::binary_four(), std::vector<int>{0}, Framing::kEof), Error);
  EXPECT_THROW(with_eof(dist), Error);
}

TEST(Container, RandomRoundTrips) {
  std::mt19937_64 rng(9);
  std::vector<AifvCode> codes{fixtures::ternary_five(), fixtures::binary_four(), fixtures::binary_master_root(),
                              fixtures::ternary_incomplete_root(), fixtures::quaternary_ten(),
                              fixtures::quaternary_eight()};
  for (int i = 0; i < 300; ++i) {
    const auto& code = codes[static_cast<size_t>(i) % codes.size()];
    std::vector<int> msg(rng() % (i == 0 ? 100000 : 500));
    for (auto& t : msg) t = static_cast<int>(rng() % code.alphabet().size());
    auto c = read_container(write_container(code, msg, Framing::kLength));
    ASSERT_EQ(c.message, msg);
  }
}

TEST(Container, Errors) {
  auto good = write_container(fixtures::binary_four(), char_labels("abcdab"), Framing::kLength);
  auto bad = good;
  bad[0] = 'X';
  EXPECT_EQ(error_of(bad), ErrorCode::kBadMagic);
  EXPECT_EQ(error_of(Bytes{'A', 'I'}), ErrorCode::kBadMagic);
  bad = good;
  bad[4] = 2;
  EXPECT_EQ(error_of(bad), ErrorCode::kVersionMismatch);
  bad = good;
  bad[7] = 5;
  EXPECT_EQ(error_of(bad), ErrorCode::kCorruptStream);
  bad = good;
  bad[6] = 1;
  EXPECT_EQ(error_of(bad), ErrorCode::kCorruptStream);
  bad = good;
  bad[12] = '!';
  EXPECT_EQ(error_of(bad), ErrorCode::kCorruptStream);
  for (size_t cut : {size_t{6}, size_t{10}, good.size() - 12, good.size() - 1}) {
    EXPECT_EQ(error_of(Bytes(good.begin(), good.begin() + static_cast<long>(cut))), ErrorCode::kTruncatedStream)
        << cut;
  }
  bad = good;
  bad.push_back(0);
  EXPECT_EQ(error_of(bad), ErrorCode::kCorruptStream);
  bad = good;
  bad.back() |= 1;  // padding bit
  EXPECT_EQ(error_of(bad), ErrorCode::kCorruptStream);
}

}  // namespace
}  // namespace aifv

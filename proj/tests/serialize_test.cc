#include "bipoly/serialize.h"

#include <filesystem>
#include <random>

#include "bipoly/error.h"
#include "gtest/gtest.h"

namespace bipoly {
namespace {

struct Fixture {
  SchemeParams p{2, 2, 1, 2, 3, 2147483647};
  WireHeader header{p, 4, 3, 6};
  Encoding enc;
  Fixture() {
    std::mt19937_64 rng(1);
    const PrimeField f = p.field();
    enc = Encode(FieldMatrix::Random(4, 3, f, rng), FieldMatrix::Random(3, 6, f, rng), p, rng);
  }
};

TEST(Serialize, ShareRoundTripAndLayout) {
  Fixture fx;
  const auto& share = fx.enc.shares[1];
  const auto bytes = SerializeShare(fx.header, share);
  // 11 header words, 3 id/point words, A(x) 2x3, two B shares 3x3.
  EXPECT_EQ(bytes.size(), 8u * (11 + 3 + 6 + 2 * 9));
  // Little-endian magic spells the record type.
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 7), "BPSHARE");
  EXPECT_EQ(bytes[8], 1);  // version
  // q = 2^31 - 1 in the third word.
  EXPECT_EQ(bytes[16], 0xff);
  EXPECT_EQ(bytes[19], 0x7f);
  EXPECT_EQ(bytes[20], 0x00);

  WireHeader parsed;
  const auto back = DeserializeShare(bytes, &parsed);
  EXPECT_EQ(parsed, fx.header);
  EXPECT_EQ(back.worker_id, share.worker_id);
  EXPECT_EQ(back.point, share.point);
  EXPECT_EQ(back.share_a, share.share_a);
  EXPECT_EQ(back.shares_b, share.shares_b);
}

TEST(Serialize, ShareNeverCarriesMasks) {
  Fixture fx;
  const auto bytes = SerializeShare(fx.header, fx.enc.shares[0]);
  // Every word after the header is accounted for by the share itself, so no
  // room is left for R or S.
  const std::size_t payload_words = bytes.size() / 8 - 11;
  EXPECT_EQ(payload_words, 3 + fx.enc.shares[0].share_a.data().size() +
                               fx.p.m * fx.enc.shares[0].shares_b[0].data().size());
}

TEST(Serialize, ResultRoundTrip) {
  Fixture fx;
  const auto res = WorkerCompute(fx.enc.shares[2], 1, fx.p.field());
  const auto bytes = SerializeResult(fx.header, res);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 7), "BPRESLT");
  const auto back = DeserializeResult(bytes, nullptr);
  EXPECT_EQ(back.worker_id, res.worker_id);
  EXPECT_EQ(back.order, res.order);
  EXPECT_EQ(back.point, res.point);
  EXPECT_EQ(back.product, res.product);
}

TEST(Serialize, RejectsMalformedInput) {
  Fixture fx;
  auto bytes = SerializeShare(fx.header, fx.enc.shares[0]);
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::kInvalidParams;
  };
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_EQ(code_of([&] { DeserializeShare(truncated, nullptr); }), Errc::kFormat);
  EXPECT_EQ(code_of([&] { DeserializeResult(bytes, nullptr); }), Errc::kFormat);  // wrong magic
  auto extra = bytes;
  extra.push_back(0);
  EXPECT_EQ(code_of([&] { DeserializeShare(extra, nullptr); }), Errc::kFormat);
  auto bad_element = bytes;
  for (int i = 0; i < 8; ++i) bad_element[8 * 14 + i] = 0xff;  // first A(x) entry
  EXPECT_EQ(code_of([&] { DeserializeShare(bad_element, nullptr); }), Errc::kFormat);
}

TEST(Serialize, FileRoundTrip) {
  Fixture fx;
  const auto path = std::filesystem::temp_directory_path() / "bipoly_share_test.bin";
  const auto bytes = SerializeShare(fx.header, fx.enc.shares[0]);
  WriteBytes(path, bytes);
  EXPECT_EQ(ReadBytes(path), bytes);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace bipoly

#include "bipoly/serialize.h"

#include <fstream>
#include <iterator>
#include <string>

#include "bipoly/error.h"

namespace bipoly {

namespace {

class Writer {
 public:
  void word(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void matrix(const FieldMatrix& m) {
    for (FieldElement e : m.data()) word(e.value);
  }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint64_t word() {
    if (pos_ + 8 > bytes_.size()) throw Error(Errc::kFormat, "truncated input");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 8;
    return v;
  }
  FieldElement element(std::uint64_t q) {
    const std::uint64_t v = word();
    if (v >= q) throw Error(Errc::kFormat, "field element " + std::to_string(v) + " >= q");
    return FieldElement{v};
  }
  FieldMatrix matrix(std::size_t rows, std::size_t cols, std::uint64_t q) {
    std::vector<FieldElement> data;
    data.reserve(rows * cols);
    for (std::size_t i = 0; i < rows * cols; ++i) data.push_back(element(q));
    return FieldMatrix(rows, cols, std::move(data));
  }
  void expect_end() const {
    if (pos_ != bytes_.size()) throw Error(Errc::kFormat, "trailing bytes after record");
  }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

void WriteHeader(Writer& w, std::uint64_t magic, const WireHeader& h) {
  w.word(magic);
  w.word(kWireVersion);
  for (std::uint64_t v : {std::uint64_t{h.params.q}, std::uint64_t{h.params.K},
                          std::uint64_t{h.params.L}, std::uint64_t{h.params.T},
                          std::uint64_t{h.params.m}, std::uint64_t{h.params.N}, h.r, h.s, h.c}) {
    w.word(v);
  }
}

WireHeader ReadHeader(Reader& rd, std::uint64_t magic) {
  if (rd.word() != magic) throw Error(Errc::kFormat, "bad magic");
  if (const auto version = rd.word(); version != kWireVersion) {
    throw Error(Errc::kFormat, "unsupported version " + std::to_string(version));
  }
  WireHeader h;
  h.params.q = rd.word();
  h.params.K = rd.word();
  h.params.L = rd.word();
  h.params.T = rd.word();
  h.params.m = rd.word();
  h.params.N = rd.word();
  h.r = rd.word();
  h.s = rd.word();
  h.c = rd.word();
  try {
    h.params.Validate();
  } catch (const Error& e) {
    throw Error(Errc::kFormat, std::string("header: ") + e.what());
  }
  if (h.r % h.params.K != 0 || h.c % h.params.L != 0) {
    throw Error(Errc::kFormat, "header dimensions are not divisible by K and L");
  }
  return h;
}

}  // namespace

std::vector<std::uint8_t> SerializeShare(const WireHeader& header, const WorkerShare& share) {
  Writer w;
  WriteHeader(w, kShareMagic, header);
  w.word(share.worker_id);
  w.word(share.point.x.value);
  w.word(share.point.y.value);
  w.matrix(share.share_a);
  for (const auto& b : share.shares_b) w.matrix(b);
  return w.take();
}

std::vector<std::uint8_t> SerializeResult(const WireHeader& header, const PartialResult& result) {
  Writer w;
  WriteHeader(w, kResultMagic, header);
  w.word(result.worker_id);
  w.word(result.order);
  w.word(result.point.x.value);
  w.word(result.point.y.value);
  w.matrix(result.product);
  return w.take();
}

WorkerShare DeserializeShare(std::span<const std::uint8_t> bytes, WireHeader* header) {
  Reader rd(bytes);
  const WireHeader h = ReadHeader(rd, kShareMagic);
  const u64 q = h.params.q;
  WorkerShare share;
  share.worker_id = rd.word();
  share.point.x = rd.element(q);
  share.point.y = rd.element(q);
  share.share_a = rd.matrix(h.r / h.params.K, h.s, q);
  for (std::size_t j = 0; j < h.params.m; ++j) {
    share.shares_b.push_back(rd.matrix(h.s, h.c / h.params.L, q));
  }
  rd.expect_end();
  if (header) *header = h;
  return share;
}

PartialResult DeserializeResult(std::span<const std::uint8_t> bytes, WireHeader* header) {
  Reader rd(bytes);
  const WireHeader h = ReadHeader(rd, kResultMagic);
  const u64 q = h.params.q;
  PartialResult res;
  res.worker_id = rd.word();
  res.order = rd.word();
  if (res.order >= h.params.m) throw Error(Errc::kFormat, "result order exceeds m");
  res.point.x = rd.element(q);
  res.point.y = rd.element(q);
  res.product = rd.matrix(h.r / h.params.K, h.c / h.params.L, q);
  rd.expect_end();
  if (header) *header = h;
  return res;
}

void WriteBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kFormat, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::kFormat, "write to " + path.string() + " failed");
}

std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kFormat, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace bipoly

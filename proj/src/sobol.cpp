#include "qmcft/sobol.hpp"

#include <bit>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmcft {

namespace {

constexpr double kTwoPow32Inv = 0x1p-32;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

SobolSequence::SobolSequence(const std::filesystem::path& direction_file, std::size_t max_dim) {
  std::ifstream in(direction_file);
  if (!in) throw std::runtime_error("cannot open direction-number file: " + direction_file.string());

  // dimension 1: m_k = 1 for all k
  directions_.resize(kBits);
  for (int k = 0; k < kBits; ++k) directions_[k] = 1u << (kBits - 1 - k);
  max_dim_ = 1;

  std::string line;
  while ((max_dim == 0 || max_dim_ < max_dim) && std::getline(in, line)) {
    std::istringstream fields(line);
    std::size_t d = 0;
    int s = 0;
    std::uint32_t a = 0;
    if (!(fields >> d >> s >> a)) continue;  // header or blank line
    if (d != max_dim_ + 1 || s < 1 || s > kBits)
      throw std::runtime_error("malformed direction-number line: " + line);

    std::vector<std::uint32_t> m(kBits);
    for (int k = 0; k < s; ++k)
      if (!(fields >> m[k])) throw std::runtime_error("missing m_i in line: " + line);
    for (int k = s; k < kBits; ++k) {
      std::uint32_t mk = m[k - s] ^ (m[k - s] << s);
      for (int j = 1; j < s; ++j)
        if ((a >> (s - 1 - j)) & 1u) mk ^= m[k - j] << j;
      m[k] = mk;
    }
    for (int k = 0; k < kBits; ++k) directions_.push_back(m[k] << (kBits - 1 - k));
    ++max_dim_;
  }
}

const SobolSequence& SobolSequence::shared() {
  static const SobolSequence seq(std::filesystem::path(QMCFT_DATA_DIR) / "sobol_directions.txt");
  return seq;
}

void SobolSequence::check_dim(std::size_t dim) const {
  if (dim == 0 || dim > max_dim_) throw std::invalid_argument("unsupported dimension");
}

void SobolSequence::point_bits(std::uint64_t index, std::span<std::uint32_t> out) const {
  check_dim(out.size());
  if (index >> kBits) throw std::invalid_argument("Sobol index must be below 2^32");
  const std::uint64_t gray = index ^ (index >> 1);
  for (std::size_t d = 0; d < out.size(); ++d) {
    std::uint32_t x = 0;
    for (int k = 0; k < kBits; ++k)
      if ((gray >> k) & 1u) x ^= directions_[d * kBits + k];
    out[d] = x;
  }
}

QmcPoint SobolSequence::point(std::uint64_t index, std::size_t dim) const {
  std::vector<std::uint32_t> bits(dim);
  point_bits(index, bits);
  QmcPoint p{std::vector<double>(dim)};
  for (std::size_t d = 0; d < dim; ++d) p.coords[d] = bits[d] * kTwoPow32Inv;
  return p;
}

SobolSequence::Cursor::Cursor(const SobolSequence& seq, std::size_t dim, std::uint64_t start)
    : seq_(&seq), dim_(dim), index_(start), state_(dim) {
  seq.point_bits(start, state_);
}

void SobolSequence::Cursor::next(std::span<double> out) {
  if (out.size() != dim_) throw std::invalid_argument("Sobol cursor: output size mismatch");
  for (std::size_t d = 0; d < dim_; ++d) out[d] = state_[d] * kTwoPow32Inv;
  // Gray code: point index+1 differs from point index in the lowest zero bit of index
  const int c = std::countr_one(index_);
  ++index_;
  if (c >= kBits) return;  // sequence exhausted; next call to point_bits would throw
  const std::uint32_t* v = &seq_->directions_[c];
  for (std::size_t d = 0; d < dim_; ++d) state_[d] ^= v[d * kBits];
}

QmcPoint apply_shift(const QmcPoint& p, const ShiftVector& s) {
  if (p.dim() != s.dim()) throw std::invalid_argument("shift dimension mismatch");
  QmcPoint out = p;
  apply_shift(out.coords, s.coords);
  return out;
}

void apply_shift(std::span<double> p, std::span<const double> s) {
  if (p.size() != s.size()) throw std::invalid_argument("shift dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) {
    double x = p[i] + s[i];
    if (x >= 1.0) x -= 1.0;
    p[i] = x;
  }
}

ShiftVector batch_shift(std::uint64_t seed, std::uint64_t batch, std::size_t dim) {
  ShiftVector s{std::vector<double>(dim)};
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ (batch * 0xd1b54a32d192ed03ULL));
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint64_t r = splitmix64(key + i * 0x9e3779b97f4a7c15ULL);
    s.coords[i] = static_cast<double>(r >> 11) * 0x1p-53;
  }
  return s;
}

}  // namespace qmcft

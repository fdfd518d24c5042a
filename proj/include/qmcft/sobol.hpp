#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace qmcft {

/// A point of the unit cube [0,1)^dim.
struct QmcPoint {
  std::vector<double> coords;
  std::size_t dim() const { return coords.size(); }
};

/// Cranley-Patterson rotation vector.
struct ShiftVector {
  std::vector<double> coords;
  std::size_t dim() const { return coords.size(); }
};

/// Unscrambled Sobol sequence in Gray-code order, 32-bit resolution.
///
/// Direction numbers come from a Joe-Kuo style text file with one line per
/// dimension (starting at dimension 2): `d s a m_1 ... m_s`. Dimension 1 is
/// the van der Corput sequence. The loaded table is immutable, so a single
/// instance may be shared across threads.
class SobolSequence {
 public:
  static constexpr int kBits = 32;

  /// Loads at most `max_dim` dimensions (0 = everything in the file).
  explicit SobolSequence(const std::filesystem::path& direction_file, std::size_t max_dim = 0);

  /// Sequence backed by the direction-number file shipped with the library.
  static const SobolSequence& shared();

  std::size_t max_dim() const { return max_dim_; }

  /// index-th point; throws std::invalid_argument("unsupported dimension")
  /// when dim exceeds the table.
  QmcPoint point(std::uint64_t index, std::size_t dim) const;

  /// Integer form (coordinate * 2^32) of the index-th point.
  void point_bits(std::uint64_t index, std::span<std::uint32_t> out) const;

  /// Direction integer v_{bit} for dimension `d` (0-based), scaled by 2^32.
  std::uint32_t direction(std::size_t d, int bit) const { return directions_[d * kBits + bit]; }

  /// Incremental generator; next() advances in O(dim) using one XOR per
  /// coordinate.
  class Cursor {
   public:
    Cursor(const SobolSequence& seq, std::size_t dim, std::uint64_t start = 0);
    std::uint64_t index() const { return index_; }
    /// Writes the current point to `out` and advances.
    void next(std::span<double> out);

   private:
    const SobolSequence* seq_;
    std::size_t dim_;
    std::uint64_t index_;
    std::vector<std::uint32_t> state_;
  };

 private:
  void check_dim(std::size_t dim) const;

  std::size_t max_dim_ = 0;
  std::vector<std::uint32_t> directions_;
};

/// Coordinatewise (p + s) mod 1.
QmcPoint apply_shift(const QmcPoint& p, const ShiftVector& s);

/// In-place variant used on hot paths; sizes must agree.
void apply_shift(std::span<double> p, std::span<const double> s);

/// Deterministic uniform shift for a batch, generated by a counter-based
/// hash of (seed, batch, coordinate). Independent of call order.
ShiftVector batch_shift(std::uint64_t seed, std::uint64_t batch, std::size_t dim);

}  // namespace qmcft

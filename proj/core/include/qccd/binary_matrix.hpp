#ifndef QCCD_BINARY_MATRIX_HPP
#define QCCD_BINARY_MATRIX_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qccd {

/// Dense GF(2) matrix, bit-packed row-major into 64-bit words.
///
/// Unused bits past `cols()` in the last word of each row are kept zero so
/// that row-level word operations (xor, popcount, equality) need no masking.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  static BinaryMatrix identity(std::size_t n);
  /// Builds from strings of '0'/'1', one per row. All rows must have equal length.
  static BinaryMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  bool get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, bool value = true);
  void flip(std::size_t r, std::size_t c);

  std::size_t row_weight(std::size_t r) const;
  std::size_t col_weight(std::size_t c) const;
  std::size_t popcount() const;
  bool is_zero() const;

  /// Column indices of the nonzero entries of row `r`, ascending.
  std::vector<std::size_t> row_support(std::size_t r) const;

  std::span<const std::uint64_t> row_words(std::size_t r) const;
  std::span<std::uint64_t> row_words(std::size_t r);
  std::size_t words_per_row() const noexcept { return words_per_row_; }

  /// row(dst) ^= row(src)
  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BinaryMatrix transpose() const;

  friend BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b);
  friend BinaryMatrix operator+(const BinaryMatrix& a, const BinaryMatrix& b);
  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) = default;

  static BinaryMatrix kron(const BinaryMatrix& a, const BinaryMatrix& b);
  static BinaryMatrix hstack(const BinaryMatrix& a, const BinaryMatrix& b);
  static BinaryMatrix vstack(const BinaryMatrix& a, const BinaryMatrix& b);

  std::string to_string() const;

 private:
  void check(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_per_row_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Rank over GF(2) by Gaussian elimination on a copy.
std::size_t gf2_rank(const BinaryMatrix& m);

/// `.pcm` text format: "rows cols" header, then one line of '0'/'1' per row.
BinaryMatrix read_pcm(std::istream& in);
void write_pcm(std::ostream& out, const BinaryMatrix& m);
BinaryMatrix load_pcm(const std::filesystem::path& path);
void save_pcm(const std::filesystem::path& path, const BinaryMatrix& m);

}  // namespace qccd

#endif  // QCCD_BINARY_MATRIX_HPP

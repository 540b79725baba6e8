#include "qccd/binary_matrix.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qccd {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t cols) { return (cols + kWordBits - 1) / kWordBits; }

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_(words_for(cols)), bits_(rows * words_for(cols), 0) {}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) return {};
  BinaryMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw std::invalid_argument("BinaryMatrix::from_rows: ragged row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < m.cols_; ++c) {
      const char ch = rows[r][c];
      if (ch == '1') {
        m.set(r, c);
      } else if (ch != '0') {
        throw std::invalid_argument("BinaryMatrix::from_rows: invalid character in row " +
                                    std::to_string(r));
      }
    }
  }
  return m;
}

void BinaryMatrix::check(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) {
    throw std::out_of_range("BinaryMatrix: (" + std::to_string(r) + ", " + std::to_string(c) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

bool BinaryMatrix::get(std::size_t r, std::size_t c) const {
  check(r, c);
  return (bits_[r * words_per_row_ + c / kWordBits] >> (c % kWordBits)) & 1u;
}

void BinaryMatrix::set(std::size_t r, std::size_t c, bool value) {
  check(r, c);
  auto& w = bits_[r * words_per_row_ + c / kWordBits];
  const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
  w = value ? (w | mask) : (w & ~mask);
}

void BinaryMatrix::flip(std::size_t r, std::size_t c) {
  check(r, c);
  bits_[r * words_per_row_ + c / kWordBits] ^= std::uint64_t{1} << (c % kWordBits);
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const {
  std::size_t total = 0;
  for (auto w : row_words(r)) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t BinaryMatrix::col_weight(std::size_t c) const {
  std::size_t total = 0;
  for (std::size_t r = 0; r < rows_; ++r) total += get(r, c) ? 1 : 0;
  return total;
}

std::size_t BinaryMatrix::popcount() const {
  std::size_t total = 0;
  for (auto w : bits_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BinaryMatrix::is_zero() const {
  for (auto w : bits_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<std::size_t> BinaryMatrix::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  const auto words = row_words(r);
  for (std::size_t wi = 0; wi < words.size(); ++wi) {
    std::uint64_t w = words[wi];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      out.push_back(wi * kWordBits + static_cast<std::size_t>(bit));
      w &= w - 1;
    }
  }
  return out;
}

std::span<const std::uint64_t> BinaryMatrix::row_words(std::size_t r) const {
  return {bits_.data() + r * words_per_row_, words_per_row_};
}

std::span<std::uint64_t> BinaryMatrix::row_words(std::size_t r) {
  return {bits_.data() + r * words_per_row_, words_per_row_};
}

void BinaryMatrix::xor_row(std::size_t dst, std::size_t src) {
  auto d = row_words(dst);
  auto s = row_words(src);
  for (std::size_t i = 0; i < words_per_row_; ++i) d[i] ^= s[i];
}

void BinaryMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = row_words(a);
  auto rb = row_words(b);
  for (std::size_t i = 0; i < words_per_row_; ++i) std::swap(ra[i], rb[i]);
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (auto c : row_support(r)) t.set(c, r);
  }
  return t;
}

BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols_ != b.rows_) {
    throw std::invalid_argument("BinaryMatrix multiply: inner dimensions differ");
  }
  BinaryMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    auto dst = out.row_words(r);
    for (auto k : a.row_support(r)) {
      auto src = b.row_words(k);
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
    }
  }
  return out;
}

BinaryMatrix operator+(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
    throw std::invalid_argument("BinaryMatrix add: shapes differ");
  }
  BinaryMatrix out = a;
  for (std::size_t i = 0; i < out.bits_.size(); ++i) out.bits_[i] ^= b.bits_[i];
  return out;
}

BinaryMatrix BinaryMatrix::kron(const BinaryMatrix& a, const BinaryMatrix& b) {
  BinaryMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (std::size_t ar = 0; ar < a.rows_; ++ar) {
    for (auto ac : a.row_support(ar)) {
      for (std::size_t br = 0; br < b.rows_; ++br) {
        for (auto bc : b.row_support(br)) {
          out.set(ar * b.rows_ + br, ac * b.cols_ + bc);
        }
      }
    }
  }
  return out;
}

BinaryMatrix BinaryMatrix::hstack(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("BinaryMatrix::hstack: row counts differ");
  BinaryMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (auto c : a.row_support(r)) out.set(r, c);
    for (auto c : b.row_support(r)) out.set(r, a.cols_ + c);
  }
  return out;
}

BinaryMatrix BinaryMatrix::vstack(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols_ != b.cols_) throw std::invalid_argument("BinaryMatrix::vstack: column counts differ");
  BinaryMatrix out(a.rows_ + b.rows_, a.cols_);
  std::copy(a.bits_.begin(), a.bits_.end(), out.bits_.begin());
  std::copy(b.bits_.begin(), b.bits_.end(), out.bits_.begin() + static_cast<std::ptrdiff_t>(a.bits_.size()));
  return out;
}

std::string BinaryMatrix::to_string() const {
  std::ostringstream os;
  write_pcm(os, *this);
  return os.str();
}

std::size_t gf2_rank(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < work.cols() && rank < work.rows(); ++c) {
    std::size_t pivot = rank;
    while (pivot < work.rows() && !work.get(pivot, c)) ++pivot;
    if (pivot == work.rows()) continue;
    work.swap_rows(rank, pivot);
    for (std::size_t r = rank + 1; r < work.rows(); ++r) {
      if (work.get(r, c)) work.xor_row(r, rank);
    }
    ++rank;
  }
  return rank;
}

BinaryMatrix read_pcm(std::istream& in) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  if (!(in >> rows >> cols)) throw std::runtime_error("pcm: missing 'rows cols' header");
  std::vector<std::string> lines;
  lines.reserve(rows);
  std::string line;
  std::getline(in, line);  // rest of header line
  while (lines.size() < rows && std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() != cols) {
      throw std::runtime_error("pcm: row " + std::to_string(lines.size()) + " has " +
                               std::to_string(line.size()) + " characters, expected " +
                               std::to_string(cols));
    }
    lines.push_back(line);
  }
  if (lines.size() != rows) throw std::runtime_error("pcm: truncated matrix body");
  if (rows == 0) return BinaryMatrix(0, cols);
  try {
    return BinaryMatrix::from_rows(lines);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("pcm: ") + e.what());
  }
}

void write_pcm(std::ostream& out, const BinaryMatrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (m.get(r, c) ? '1' : '0');
    out << '\n';
  }
}

BinaryMatrix load_pcm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("pcm: cannot open " + path.string());
  return read_pcm(in);
}

void save_pcm(const std::filesystem::path& path, const BinaryMatrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("pcm: cannot write " + path.string());
  write_pcm(out, m);
}

}  // namespace qccd

#ifndef QCCD_CODES_HPP
#define QCCD_CODES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qccd/binary_matrix.hpp"

namespace qccd {

enum class CodeFamily { HGP, BB, Custom };
enum class PauliKind : std::uint8_t { X, Z };

std::string to_string(CodeFamily f);
std::string to_string(PauliKind k);

/// CSS code given by its X and Z parity checks.
///
/// Construction validates hx.cols == hz.cols and hx * hz^T == 0; k is
/// computed once from GF(2) ranks.
class CssCode {
 public:
  CssCode(BinaryMatrix hx, BinaryMatrix hz, CodeFamily family, std::string name = {});

  const BinaryMatrix& hx() const noexcept { return hx_; }
  const BinaryMatrix& hz() const noexcept { return hz_; }
  CodeFamily family() const noexcept { return family_; }
  const std::string& name() const noexcept { return name_; }

  std::size_t n() const noexcept { return hx_.cols(); }
  std::size_t m_x() const noexcept { return hx_.rows(); }
  std::size_t m_z() const noexcept { return hz_.rows(); }
  std::size_t m() const noexcept { return m_x() + m_z(); }
  std::size_t k() const noexcept { return k_; }

  /// Largest row weight of hx / hz (0 for an empty block).
  std::size_t w_max_x() const;
  std::size_t w_max_z() const;

 private:
  BinaryMatrix hx_;
  BinaryMatrix hz_;
  CodeFamily family_;
  std::string name_;
  std::size_t k_ = 0;
};

struct Stabilizer {
  PauliKind kind;
  std::size_t index;                  // ordinal within its kind
  std::vector<std::size_t> support;   // sorted data-qubit ids
  std::size_t weight() const noexcept { return support.size(); }
};

/// X stabilizers (rows of hx) followed by Z stabilizers (rows of hz).
std::vector<Stabilizer> stabilizers_of(const CssCode& code);

/// Position of a stabilizer in the stabilizers_of() ordering.
inline std::size_t stabilizer_ordinal(const CssCode& code, PauliKind kind, std::size_t index) {
  return kind == PauliKind::X ? index : code.m_x() + index;
}

/// Hypergraph product: hx = [H1 (x) I_n2 | I_r1 (x) H2^T], hz = [I_n1 (x) H2 | H1^T (x) I_r2].
CssCode hgp_construct(const BinaryMatrix& h1, const BinaryMatrix& h2, std::string name = {});

struct BbPolynomials {
  std::size_t l = 0;
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, std::size_t>> a;  // (i, j) for x^i y^j
  std::vector<std::pair<std::size_t, std::size_t>> b;
};

/// Bivariate bicycle code hx = [A | B], hz = [B^T | A^T] over Z_l x Z_m.
CssCode bb_construct(const BbPolynomials& poly, std::string name = {});

/// The [[144,12,12]] polynomials A = x^3 + y + y^2, B = y^3 + x + x^2 with l = 12, m = 6.
BbPolynomials bb_preset_144();

BbPolynomials bb_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BbPolynomials& p);

/// Full-rank 9x12 check matrix of a (3,4)-regular [12,3,6] classical code.
BinaryMatrix seed_12_3_6();
/// Full-rank 15x20 check matrix of a (3,4)-regular [20,5,8] classical code.
BinaryMatrix seed_20_5_8();
/// 3x7 Hamming [7,4,3] check matrix.
BinaryMatrix seed_hamming_7();
/// 1x2 repetition check [1 1].
BinaryMatrix seed_repetition_2();

/// Named codes: "hgp5", "hgp58", "hgp225", "hgp625", "bb144".
CssCode code_preset(const std::string& name);
std::vector<std::string> code_preset_names();

/// Parses "preset", "hgp:<a.pcm>[,<b.pcm>]", "hgp:225", "bb:144", "bb:<json file>",
/// or "random-hgp:<rows>x<cols>" (drawn with `seed`).
CssCode code_from_spec(const std::string& spec, std::uint64_t seed = 0);

/// Random check matrix with every row and column nonzero; used for fuzzing.
BinaryMatrix random_check_matrix(std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

}  // namespace qccd

#endif  // QCCD_CODES_HPP

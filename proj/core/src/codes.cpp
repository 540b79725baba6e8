#include "qccd/codes.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <random>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace qccd {

namespace {

// Largest code we are willing to materialise densely.
constexpr std::size_t kMaxQubits = std::size_t{1} << 22;

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    throw std::length_error("code dimensions overflow");
  }
  return a * b;
}

std::size_t max_row_weight(const BinaryMatrix& m) {
  std::size_t w = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) w = std::max(w, m.row_weight(r));
  return w;
}

// Cyclic shift S_k on Z_k: S[i][(i+1) mod k] = 1.
BinaryMatrix cyclic_shift(std::size_t k) {
  BinaryMatrix s(k, k);
  for (std::size_t i = 0; i < k; ++i) s.set(i, (i + 1) % k);
  return s;
}

BinaryMatrix matrix_power(const BinaryMatrix& base, std::size_t e) {
  BinaryMatrix out = BinaryMatrix::identity(base.rows());
  for (std::size_t i = 0; i < e; ++i) out = out * base;
  return out;
}

BinaryMatrix bb_block(std::size_t l, std::size_t m,
                      const std::vector<std::pair<std::size_t, std::size_t>>& terms) {
  const BinaryMatrix x = BinaryMatrix::kron(cyclic_shift(l), BinaryMatrix::identity(m));
  const BinaryMatrix y = BinaryMatrix::kron(BinaryMatrix::identity(l), cyclic_shift(m));
  BinaryMatrix sum(l * m, l * m);
  for (const auto& [i, j] : terms) sum = sum + matrix_power(x, i) * matrix_power(y, j);
  return sum;
}

BinaryMatrix from_literal(std::initializer_list<const char*> rows) {
  std::vector<std::string> lines;
  for (const char* r : rows) lines.emplace_back(r);
  return BinaryMatrix::from_rows(lines);
}

}  // namespace

std::string to_string(CodeFamily f) {
  switch (f) {
    case CodeFamily::HGP: return "HGP";
    case CodeFamily::BB: return "BB";
    case CodeFamily::Custom: return "Custom";
  }
  return "Custom";
}

std::string to_string(PauliKind k) { return k == PauliKind::X ? "X" : "Z"; }

CssCode::CssCode(BinaryMatrix hx, BinaryMatrix hz, CodeFamily family, std::string name)
    : hx_(std::move(hx)), hz_(std::move(hz)), family_(family), name_(std::move(name)) {
  if (hx_.cols() != hz_.cols()) {
    throw std::invalid_argument("CssCode: hx and hz have different column counts");
  }
  if (!(hx_ * hz_.transpose()).is_zero()) {
    throw std::invalid_argument("CssCode: hx * hz^T != 0 (checks do not commute)");
  }
  const std::size_t rx = gf2_rank(hx_);
  const std::size_t rz = gf2_rank(hz_);
  if (rx + rz > hx_.cols()) throw std::invalid_argument("CssCode: negative logical dimension");
  k_ = hx_.cols() - rx - rz;
}

std::size_t CssCode::w_max_x() const { return max_row_weight(hx_); }
std::size_t CssCode::w_max_z() const { return max_row_weight(hz_); }

std::vector<Stabilizer> stabilizers_of(const CssCode& code) {
  std::vector<Stabilizer> out;
  out.reserve(code.m());
  for (std::size_t r = 0; r < code.m_x(); ++r) {
    out.push_back({PauliKind::X, r, code.hx().row_support(r)});
  }
  for (std::size_t r = 0; r < code.m_z(); ++r) {
    out.push_back({PauliKind::Z, r, code.hz().row_support(r)});
  }
  return out;
}

CssCode hgp_construct(const BinaryMatrix& h1, const BinaryMatrix& h2, std::string name) {
  if (h1.empty() || h2.empty() || h1.is_zero() || h2.is_zero()) {
    throw std::invalid_argument("hgp_construct: seed matrices must be nonzero");
  }
  const std::size_t r1 = h1.rows(), n1 = h1.cols();
  const std::size_t r2 = h2.rows(), n2 = h2.cols();
  const std::size_t n = checked_mul(n1, n2) + checked_mul(r1, r2);
  if (n > kMaxQubits) throw std::length_error("hgp_construct: code too large");

  const BinaryMatrix hx = BinaryMatrix::hstack(BinaryMatrix::kron(h1, BinaryMatrix::identity(n2)),
                                               BinaryMatrix::kron(BinaryMatrix::identity(r1), h2.transpose()));
  const BinaryMatrix hz = BinaryMatrix::hstack(BinaryMatrix::kron(BinaryMatrix::identity(n1), h2),
                                               BinaryMatrix::kron(h1.transpose(), BinaryMatrix::identity(r2)));
  return CssCode(hx, hz, CodeFamily::HGP, std::move(name));
}

CssCode bb_construct(const BbPolynomials& poly, std::string name) {
  if (poly.l < 1 || poly.m < 1) throw std::invalid_argument("bb_construct: l and m must be >= 1");
  if (poly.a.empty() || poly.b.empty()) throw std::invalid_argument("bb_construct: empty term list");
  for (const auto* terms : {&poly.a, &poly.b}) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : *terms) {
      if (t.first >= poly.l || t.second >= poly.m) {
        throw std::out_of_range("bb_construct: exponent (" + std::to_string(t.first) + "," +
                                std::to_string(t.second) + ") outside [0,l)x[0,m)");
      }
      if (!seen.insert(t).second) throw std::invalid_argument("bb_construct: duplicate term");
    }
  }
  if (checked_mul(2, checked_mul(poly.l, poly.m)) > kMaxQubits) {
    throw std::length_error("bb_construct: code too large");
  }
  const BinaryMatrix a = bb_block(poly.l, poly.m, poly.a);
  const BinaryMatrix b = bb_block(poly.l, poly.m, poly.b);
  const BinaryMatrix hx = BinaryMatrix::hstack(a, b);
  const BinaryMatrix hz = BinaryMatrix::hstack(b.transpose(), a.transpose());
  return CssCode(hx, hz, CodeFamily::BB, std::move(name));
}

BbPolynomials bb_preset_144() {
  return {12, 6, {{3, 0}, {0, 1}, {0, 2}}, {{0, 3}, {1, 0}, {2, 0}}};
}

BbPolynomials bb_from_json(const nlohmann::json& j) {
  BbPolynomials p;
  p.l = j.at("l").get<std::size_t>();
  p.m = j.at("m").get<std::size_t>();
  for (const auto& t : j.at("a")) p.a.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>());
  for (const auto& t : j.at("b")) p.b.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<std::size_t>());
  return p;
}

nlohmann::json to_json(const BbPolynomials& p) {
  nlohmann::json a = nlohmann::json::array();
  nlohmann::json b = nlohmann::json::array();
  for (const auto& [i, j] : p.a) a.push_back({i, j});
  for (const auto& [i, j] : p.b) b.push_back({i, j});
  return {{"l", p.l}, {"m", p.m}, {"a", a}, {"b", b}};
}

// Found by randomized (3,4)-regular search; minimum distance checked by
// enumerating all codewords. Mirrors fixtures/h12_3_6.pcm.
BinaryMatrix seed_12_3_6() {
  return from_literal({
      "001000100011",
      "110100000100",
      "000010001011",
      "000000111100",
      "100100010001",
      "001011100000",
      "011001010000",
      "100010000110",
      "010101001000",
  });
}

// Mirrors fixtures/h20_5_8.pcm.
BinaryMatrix seed_20_5_8() {
  return from_literal({
      "00000000010011001000",
      "00101000100001000000",
      "10000010101000000000",
      "11000000000100001000",
      "01000010000000010010",
      "00000001000000110001",
      "00000001001000000101",
      "00000001010000001100",
      "00000000000110100100",
      "00110000000000110000",
      "00010100100000000010",
      "00001100001010000000",
      "10001000000101000000",
      "00100010010000000010",
      "01010100000000000001",
  });
}

BinaryMatrix seed_hamming_7() {
  return from_literal({
      "1010101",
      "0110011",
      "0001111",
  });
}

BinaryMatrix seed_repetition_2() { return from_literal({"11"}); }

CssCode code_preset(const std::string& name) {
  if (name == "hgp5") return hgp_construct(seed_repetition_2(), seed_repetition_2(), "hgp5");
  if (name == "hgp58") return hgp_construct(seed_hamming_7(), seed_hamming_7(), "hgp58");
  if (name == "hgp225") return hgp_construct(seed_12_3_6(), seed_12_3_6(), "hgp225");
  if (name == "hgp625") return hgp_construct(seed_20_5_8(), seed_20_5_8(), "hgp625");
  if (name == "bb144") return bb_construct(bb_preset_144(), "bb144");
  throw std::invalid_argument("unknown code preset '" + name + "'");
}

std::vector<std::string> code_preset_names() { return {"hgp5", "hgp58", "hgp225", "hgp625", "bb144"}; }

BinaryMatrix random_check_matrix(std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("random_check_matrix: empty shape");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution bit(density);
  std::uniform_int_distribution<std::size_t> pick_col(0, cols - 1);
  std::uniform_int_distribution<std::size_t> pick_row(0, rows - 1);
  BinaryMatrix h(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (bit(rng)) h.set(r, c);
    }
    if (h.row_weight(r) == 0) h.set(r, pick_col(rng));
  }
  for (std::size_t c = 0; c < cols; ++c) {
    if (h.col_weight(c) == 0) h.set(pick_row(rng), c);
  }
  return h;
}

CssCode code_from_spec(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) return code_preset(spec);

  const std::string family = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (family == "hgp") {
    if (arg == "5" || arg == "58" || arg == "225" || arg == "625") return code_preset("hgp" + arg);
    const auto comma = arg.find(',');
    const BinaryMatrix h1 = load_pcm(arg.substr(0, comma));
    const BinaryMatrix h2 = comma == std::string::npos ? h1 : load_pcm(arg.substr(comma + 1));
    return hgp_construct(h1, h2, spec);
  }
  if (family == "bb") {
    if (arg == "144") return code_preset("bb144");
    std::ifstream in(arg);
    if (!in) throw std::runtime_error("cannot open BB polynomial file " + arg);
    return bb_construct(bb_from_json(nlohmann::json::parse(in)), spec);
  }
  if (family == "random-hgp") {
    const auto x = arg.find('x');
    if (x == std::string::npos) throw std::invalid_argument("random-hgp expects <rows>x<cols>");
    const std::size_t r = std::stoul(arg.substr(0, x));
    const std::size_t c = std::stoul(arg.substr(x + 1));
    return hgp_construct(random_check_matrix(r, c, 0.3, seed), random_check_matrix(r, c, 0.3, seed + 1), spec);
  }
  throw std::invalid_argument("unknown code family in spec '" + spec + "'");
}

}  // namespace qccd

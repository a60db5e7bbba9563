#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "capbound/field.hpp"
#include "capbound/rational.hpp"

namespace capbound {

// Dense matrix with exact rational entries. Matrices destined for F_p
// carry integer entries; reduction happens inside rank().
struct RatMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> entries;

  RatMatrix() = default;
  RatMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c, Rational(0)) {
    if (r <= 0 || c <= 0) throw std::invalid_argument("RatMatrix: bad shape");
  }
  Rational& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * cols + j];
  }
  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  bool operator==(const RatMatrix& o) const {
    return rows == o.rows && cols == o.cols && entries == o.entries;
  }
};

inline RatMatrix kronecker(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      if (a.at(i, j) == 0) continue;
      for (int k = 0; k < b.rows; ++k)
        for (int l = 0; l < b.cols; ++l)
          out.at(i * b.rows + k, j * b.cols + l) = a.at(i, j) * b.at(k, l);
    }
  return out;
}

inline RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.rows + b.rows, a.cols + b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) out.at(a.rows + i, a.cols + j) = b.at(i, j);
  return out;
}

namespace detail {

inline int rank_rational(RatMatrix m) {
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    Rational pv = m.at(rank, col);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (m.at(i, col) == 0) continue;
      Rational f = m.at(i, col) / pv;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

// Entry reduced into F_p; rejects rationals whose denominator vanishes mod p.
inline std::uint32_t reduce_mod(const Rational& r, std::uint32_t p) {
  mpz_class num = r.get_num(), den = r.get_den();
  mpz_class pz(static_cast<unsigned long>(p));
  mpz_class nm = num % pz, dm = den % pz;
  if (dm < 0) dm += pz;
  if (nm < 0) nm += pz;
  std::uint32_t n32 = static_cast<std::uint32_t>(nm.get_ui());
  std::uint32_t d32 = static_cast<std::uint32_t>(dm.get_ui());
  if (d32 == 0) throw std::domain_error("entry denominator divisible by p");
  return mod_mul(n32, mod_inv(d32, p), p);
}

inline int rank_mod(const RatMatrix& m, std::uint32_t p) {
  std::vector<std::uint32_t> a(m.entries.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = reduce_mod(m.entries[i], p);
  auto at = [&](int i, int j) -> std::uint32_t& { return a[static_cast<std::size_t>(i) * m.cols + j]; };
  int rank = 0;
  for (int col = 0; col < m.cols && rank < m.rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (at(i, col) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(at(rank, j), at(pivot, j));
    std::uint32_t inv = mod_inv(at(rank, col), p);
    for (int i = rank + 1; i < m.rows; ++i) {
      if (at(i, col) == 0) continue;
      std::uint32_t f = mod_mul(at(i, col), inv, p);
      for (int j = col; j < m.cols; ++j) {
        std::uint32_t sub = mod_mul(f, at(rank, j), p);
        at(i, j) = (at(i, j) + p - sub) % p;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

// Exact rank over the declared field.
inline int rank(const RatMatrix& m, const FieldSpec& field) {
  if (field.kind == FieldSpec::Kind::Rationals) return detail::rank_rational(m);
  return detail::rank_mod(m, field.p);
}

// Text form: header "n field" (field is Q or the prime), then n rows.
inline std::string serialize_matrix(const RatMatrix& m, const FieldSpec& field) {
  if (m.rows != m.cols) throw std::invalid_argument("serialize_matrix: square only");
  std::ostringstream out;
  out << m.rows << ' ' << field.str() << '\n';
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) out << (j ? " " : "") << rat_str(m.at(i, j));
    out << '\n';
  }
  return out.str();
}

inline std::pair<RatMatrix, FieldSpec> parse_matrix(const std::string& text) {
  std::istringstream in(text);
  int n;
  std::string fs;
  if (!(in >> n >> fs)) throw std::invalid_argument("matrix file: bad header");
  FieldSpec field = FieldSpec::parse(fs);
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("matrix file: truncated");
      m.at(i, j) = rat_parse(tok);
    }
  return {m, field};
}

inline std::pair<RatMatrix, FieldSpec> load_matrix(const std::string& filepath) {
  std::ifstream in(filepath);
  if (!in) throw std::runtime_error("cannot open matrix file: " + filepath);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

}  // namespace capbound

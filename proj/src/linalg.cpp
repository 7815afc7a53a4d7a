#include "flexbh/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace flexbh {

RowEchelon row_reduce(RationalMatrix m) {
  RowEchelon out;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(sel, k), m(pivot_row, k));

    const Rational inv = 1 / m(pivot_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(pivot_row, k) *= inv;

    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row || m(r, c) == 0) continue;
      const Rational factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(pivot_row, k);
    }
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<std::vector<Rational>> nullspace(const RationalMatrix& m) {
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
      v[ech.pivot_cols[r]] = -ech.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

constexpr std::uint64_t kP = ModularMatrix::kPrime;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(prod & kP);
  std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
  std::uint64_t s = lo + hi;
  return s >= kP ? s - kP : s;
}

std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kP - b; }

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t acc = 1;
  while (exp) {
    if (exp & 1) acc = mul_mod(acc, base);
    base = mul_mod(base, base);
    exp >>= 1;
  }
  return acc;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kP - 2); }

std::uint64_t reduce_int(const mpz_class& z) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z.get_mpz_t(), kP);
}

}  // namespace

std::uint64_t ModularMatrix::reduce(const Rational& q) {
  const std::uint64_t den = reduce_int(q.get_den());
  if (den == 0) throw std::domain_error("denominator vanishes modulo the screening prime");
  return mul_mod(reduce_int(q.get_num()), inv_mod(den));
}

std::size_t ModularMatrix::rank() const {
  std::vector<std::uint64_t> a = data_;
  auto at = [&](std::size_t r, std::size_t c) -> std::uint64_t& { return a[r * cols_ + c]; };
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols_ && pivot_row < rows_; ++c) {
    std::size_t sel = pivot_row;
    while (sel < rows_ && at(sel, c) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != pivot_row)
      for (std::size_t k = 0; k < cols_; ++k) std::swap(at(sel, k), at(pivot_row, k));
    const std::uint64_t inv = inv_mod(at(pivot_row, c));
    for (std::size_t r = pivot_row + 1; r < rows_; ++r) {
      if (at(r, c) == 0) continue;
      const std::uint64_t f = mul_mod(at(r, c), inv);
      for (std::size_t k = c; k < cols_; ++k)
        at(r, k) = sub_mod(at(r, k), mul_mod(f, at(pivot_row, k)));
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace flexbh

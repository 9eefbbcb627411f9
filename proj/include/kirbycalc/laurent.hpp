#pragma once

// Exact one-variable Laurent polynomials with BigInt coefficients.
// Canonical form: empty coefficient list for zero, otherwise nonzero
// leading and trailing coefficients on a contiguous exponent range.

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "kirbycalc/bigint.hpp"

namespace kirbycalc {

class LaurentPolynomial {
public:
  LaurentPolynomial() = default;
  LaurentPolynomial(long long c) {
    if (c != 0) { lo_ = 0; coeff_.push_back(BigInt(c)); }
  }
  static LaurentPolynomial monomial(BigInt c, int exp) {
    LaurentPolynomial p;
    if (!c.is_zero()) { p.lo_ = exp; p.coeff_.push_back(std::move(c)); }
    return p;
  }
  static LaurentPolynomial from_coeffs(int lo, std::vector<BigInt> cs) {
    LaurentPolynomial p;
    p.lo_ = lo;
    p.coeff_ = std::move(cs);
    p.trim();
    return p;
  }

  bool is_zero() const { return coeff_.empty(); }
  int lo_exp() const { return lo_; }
  int hi_exp() const { return lo_ + static_cast<int>(coeff_.size()) - 1; }
  int span() const { return is_zero() ? 0 : hi_exp() - lo_exp(); }
  BigInt coeff(int exp) const {
    if (is_zero() || exp < lo_ || exp > hi_exp()) return BigInt(0);
    return coeff_[exp - lo_];
  }
  const BigInt& leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of zero");
    return coeff_.back();
  }
  const BigInt& trailing() const {
    if (is_zero()) throw std::domain_error("trailing coefficient of zero");
    return coeff_.front();
  }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int lo = std::min(a.lo_, b.lo_);
    int hi = std::max(a.hi_exp(), b.hi_exp());
    LaurentPolynomial r;
    r.lo_ = lo;
    r.coeff_.assign(hi - lo + 1, BigInt(0));
    for (size_t i = 0; i < a.coeff_.size(); ++i) r.coeff_[a.lo_ - lo + i] += a.coeff_[i];
    for (size_t i = 0; i < b.coeff_.size(); ++i) r.coeff_[b.lo_ - lo + i] += b.coeff_[i];
    r.trim();
    return r;
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    LaurentPolynomial r = a;
    for (auto& c : r.coeff_) c = -c;
    return r;
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a + (-b);
  }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    LaurentPolynomial r;
    r.lo_ = a.lo_ + b.lo_;
    r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.coeff_.size(); ++i)
      for (size_t j = 0; j < b.coeff_.size(); ++j)
        r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
    r.trim();
    return r;
  }
  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.lo_ == b.lo_ && a.coeff_ == b.coeff_;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) { *this = *this + o; return *this; }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { *this = *this - o; return *this; }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { *this = *this * o; return *this; }

  // substitute t -> t^-1
  LaurentPolynomial reversed() const {
    if (is_zero()) return {};
    LaurentPolynomial r;
    r.lo_ = -hi_exp();
    r.coeff_.assign(coeff_.rbegin(), coeff_.rend());
    return r;
  }

  LaurentPolynomial shifted(int k) const {
    LaurentPolynomial r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
  }

  BigInt eval(long long t) const {
    // only meaningful for Laurent polynomials once shifted to polynomials;
    // evaluates sum c_i t^(i - lo), i.e. t^-lo * p(t), enough for |eval| tests at t = +-1
    BigInt acc(0), tp(1), tb(t);
    for (const auto& c : coeff_) { acc += c * tp; tp = tp * tb; }
    return acc;
  }
  BigInt eval_at_one() const { return eval(1); }
  // |p(-1)| is unit-invariant; p(-1) itself is defined up to sign for Laurent p.
  BigInt eval_at_minus_one_abs() const { return eval(-1).abs(); }

  bool is_unit() const {  // +- t^k
    return coeff_.size() == 1 && coeff_[0].abs() == BigInt(1);
  }

  // equality up to multiplication by +- t^k
  static bool equal_up_to_units(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    if (a.coeff_.size() != b.coeff_.size()) return false;
    bool plus = true, minus = true;
    for (size_t i = 0; i < a.coeff_.size(); ++i) {
      if (!(a.coeff_[i] == b.coeff_[i])) plus = false;
      if (!(a.coeff_[i] == -b.coeff_[i])) minus = false;
    }
    return plus || minus;
  }

  bool is_symmetric() const {  // p(t) == p(1/t) after recentring
    return *this == reversed().shifted(lo_ + hi_exp());
  }

  // Exact division; throws if the division is not exact.
  static LaurentPolynomial divide_exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("LaurentPolynomial: division by zero");
    if (a.is_zero()) return {};
    if (a.coeff_.size() < b.coeff_.size()) throw std::domain_error("LaurentPolynomial: inexact division");
    std::vector<BigInt> rem = a.coeff_;
    size_t qn = a.coeff_.size() - b.coeff_.size() + 1;
    std::vector<BigInt> q(qn, BigInt(0));
    for (size_t k = qn; k-- > 0;) {
      BigInt qq, rr;
      BigInt::divmod(rem[k + b.coeff_.size() - 1], b.coeff_.back(), qq, rr);
      if (!rr.is_zero()) throw std::domain_error("LaurentPolynomial: inexact division");
      q[k] = qq;
      for (size_t i = 0; i < b.coeff_.size(); ++i)
        rem[k + i] -= qq * b.coeff_[i];
    }
    for (const auto& c : rem)
      if (!c.is_zero()) throw std::domain_error("LaurentPolynomial: inexact division");
    return from_coeffs(a.lo_ - b.lo_, std::move(q));
  }

  // t^k p(t) with symmetric exponent range; requires a palindromic
  // coefficient list (up to global sign), as Alexander polynomials have.
  LaurentPolynomial symmetrized() const {
    if (is_zero()) return {};
    if (span() % 2 != 0) throw std::domain_error("symmetrize: odd exponent span");
    LaurentPolynomial r = *this;
    r.lo_ = -span() / 2;
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = coeff_.size(); i-- > 0;) {
      if (coeff_[i].is_zero()) continue;
      int e = lo_ + static_cast<int>(i);
      BigInt c = coeff_[i];
      std::string term;
      if (e == 0) term = c.abs().to_string();
      else {
        if (!(c.abs() == BigInt(1))) term = c.abs().to_string() + "*";
        term += "t";
        if (e != 1) term += "^" + std::to_string(e);
      }
      if (out.empty()) out = (c.is_negative() ? "-" : "") + term;
      else out += (c.is_negative() ? " - " : " + ") + term;
    }
    return out;
  }

private:
  int lo_ = 0;
  std::vector<BigInt> coeff_;  // coeff_[i] multiplies t^(lo_ + i)

  void trim() {
    while (!coeff_.empty() && coeff_.back().is_zero()) coeff_.pop_back();
    size_t drop = 0;
    while (drop < coeff_.size() && coeff_[drop].is_zero()) ++drop;
    if (drop) {
      coeff_.erase(coeff_.begin(), coeff_.begin() + drop);
      lo_ += static_cast<int>(drop);
    }
    if (coeff_.empty()) lo_ = 0;
  }
};

}  // namespace kirbycalc

#pragma once

// Arbitrary-precision signed integers, sign-and-magnitude over 32-bit limbs.
// Small scope on purpose: exactly the operations the exact-arithmetic layers
// (Smith normal form, Laurent determinants, rational signatures) need.

#include <cstdint>
#include <cstdlib>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace kirbycalc {

class BigInt {
public:
  BigInt() = default;
  BigInt(long long v) {
    if (v < 0) { neg_ = true; }
    unsigned long long m = neg_ ? 0ULL - static_cast<unsigned long long>(v)
                                : static_cast<unsigned long long>(v);
    while (m) { limbs_.push_back(static_cast<uint32_t>(m & 0xffffffffu)); m >>= 32; }
  }
  BigInt(int v) : BigInt(static_cast<long long>(v)) {}

  static BigInt from_string(const std::string& s) {
    BigInt r;
    size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) { neg = (s[i] == '-'); ++i; }
    if (i == s.size()) throw std::invalid_argument("BigInt: empty numeral");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r = r.mul_small(10);
      r = r + BigInt(s[i] - '0');
    }
    r.neg_ = neg && !r.is_zero();
    return r;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return neg_; }
  int sign() const { return is_zero() ? 0 : (neg_ ? -1 : 1); }

  bool fits_longlong() const {
    if (limbs_.size() > 2) return false;
    unsigned long long m = mag64();
    return neg_ ? m <= 0x8000000000000000ULL : m < 0x8000000000000000ULL;
  }
  long long to_longlong() const {
    if (!fits_longlong()) throw std::overflow_error("BigInt: out of long long range");
    unsigned long long m = mag64();
    return neg_ ? -static_cast<long long>(m - 1) - 1 : static_cast<long long>(m);
  }

  friend BigInt operator-(const BigInt& a) {
    BigInt r = a;
    if (!r.is_zero()) r.neg_ = !r.neg_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.neg_ == b.neg_) {
      BigInt r;
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.neg_ = a.neg_ && !r.limbs_.empty();
      return r;
    }
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (c == 0) return BigInt();
    BigInt r;
    if (c > 0) { r.limbs_ = sub_mag(a.limbs_, b.limbs_); r.neg_ = a.neg_; }
    else       { r.limbs_ = sub_mag(b.limbs_, a.limbs_); r.neg_ = b.neg_; }
    if (r.limbs_.empty()) r.neg_ = false;
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.is_zero() || b.is_zero()) return BigInt();
    BigInt r;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (size_t i = 0; i < a.limbs_.size(); ++i) {
      uint64_t carry = 0;
      for (size_t j = 0; j < b.limbs_.size(); ++j) {
        uint64_t cur = static_cast<uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                       r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<uint32_t>(cur);
        carry = cur >> 32;
      }
      r.limbs_[i + b.limbs_.size()] = static_cast<uint32_t>(carry);
    }
    r.trim();
    r.neg_ = (a.neg_ != b.neg_) && !r.limbs_.empty();
    return r;
  }

  // Truncated division (C semantics): quotient rounds toward zero,
  // remainder has the sign of the dividend.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.is_zero()) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.limbs_, b.limbs_) < 0) { q = BigInt(); r = a; return; }
    if (b.limbs_.size() == 1) {
      uint64_t d = b.limbs_[0], rem = 0;
      q.limbs_.assign(a.limbs_.size(), 0);
      for (size_t i = a.limbs_.size(); i-- > 0;) {
        uint64_t cur = (rem << 32) | a.limbs_[i];
        q.limbs_[i] = static_cast<uint32_t>(cur / d);
        rem = cur % d;
      }
      q.trim();
      r = BigInt(static_cast<long long>(rem));
    } else {
      // Knuth-style normalized long division, limb by limb.
      int shift = 0;
      uint32_t top = b.limbs_.back();
      while (!(top & 0x80000000u)) { top <<= 1; ++shift; }
      std::vector<uint32_t> u = shl_mag(a.limbs_, shift);
      std::vector<uint32_t> v = shl_mag(b.limbs_, shift);
      size_t n = v.size(), m = u.size() - n;
      u.push_back(0);
      q.limbs_.assign(m + 1, 0);
      for (size_t j = m + 1; j-- > 0;) {
        uint64_t num = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
        uint64_t qh = num / v[n - 1];
        uint64_t rh = num % v[n - 1];
        while (qh > 0xffffffffu ||
               (n >= 2 && qh * v[n - 2] > ((rh << 32) | u[j + n - 2]))) {
          --qh; rh += v[n - 1];
          if (rh > 0xffffffffu) break;
        }
        // multiply-subtract, add back on negative overshoot
        int64_t borrow = 0; uint64_t carry = 0;
        for (size_t i = 0; i < n; ++i) {
          uint64_t p = qh * v[i] + carry;
          carry = p >> 32;
          int64_t t = static_cast<int64_t>(u[i + j]) - static_cast<int64_t>(p & 0xffffffffu) - borrow;
          u[i + j] = static_cast<uint32_t>(t);
          borrow = (t < 0) ? 1 : 0;
        }
        int64_t t = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) - borrow;
        u[j + n] = static_cast<uint32_t>(t);
        if (t < 0) {
          --qh;
          uint64_t c2 = 0;
          for (size_t i = 0; i < n; ++i) {
            uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
            u[i + j] = static_cast<uint32_t>(s);
            c2 = s >> 32;
          }
          u[j + n] = static_cast<uint32_t>(u[j + n] + c2);
        }
        q.limbs_[j] = static_cast<uint32_t>(qh);
      }
      q.trim();
      u.resize(n);
      r.limbs_ = shr_mag(u, shift);
      r.trim();
    }
    q.neg_ = (a.neg_ != b.neg_) && !q.limbs_.empty();
    r.neg_ = a.neg_ && !r.limbs_.empty();
  }

  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r; divmod(a, b, q, r); return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r; divmod(a, b, q, r); return r;
  }

  BigInt& operator+=(const BigInt& o) { *this = *this + o; return *this; }
  BigInt& operator-=(const BigInt& o) { *this = *this - o; return *this; }
  BigInt& operator*=(const BigInt& o) { *this = *this * o; return *this; }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.neg_ == b.neg_ && a.limbs_ == b.limbs_;
  }
  friend std::strong_ordering operator<=>(const BigInt& a, const BigInt& b) {
    if (a.neg_ != b.neg_) return a.neg_ ? std::strong_ordering::less : std::strong_ordering::greater;
    int c = cmp_mag(a.limbs_, b.limbs_);
    if (a.neg_) c = -c;
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  BigInt abs() const { BigInt r = *this; r.neg_ = false; return r; }

  static BigInt gcd(BigInt a, BigInt b) {
    a.neg_ = b.neg_ = false;
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = b; b = r;
      a.neg_ = b.neg_ = false;
    }
    return a;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    BigInt t = *this;
    t.neg_ = false;
    while (!t.is_zero()) {
      BigInt q, r;
      divmod(t, BigInt(1000000000LL), q, r);
      long long chunk = r.is_zero() ? 0 : r.to_longlong();
      std::string piece = std::to_string(chunk);
      if (!q.is_zero()) piece = std::string(9 - piece.size(), '0') + piece;
      out = piece + out;
      t = q;
    }
    return (neg_ ? "-" : "") + out;
  }

private:
  bool neg_ = false;
  std::vector<uint32_t> limbs_;  // little-endian, no trailing zeros

  unsigned long long mag64() const {
    unsigned long long m = 0;
    if (limbs_.size() > 1) m = static_cast<unsigned long long>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }
  void trim() { while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back(); }
  BigInt mul_small(uint32_t k) const {
    BigInt r;
    uint64_t carry = 0;
    for (uint32_t l : limbs_) {
      uint64_t cur = static_cast<uint64_t>(l) * k + carry;
      r.limbs_.push_back(static_cast<uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry) r.limbs_.push_back(static_cast<uint32_t>(carry));
    r.trim();
    r.neg_ = neg_ && !r.limbs_.empty();
    return r;
  }

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    uint64_t carry = 0;
    for (size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
      uint64_t cur = carry;
      if (i < a.size()) cur += a[i];
      if (i < b.size()) cur += b[i];
      r.push_back(static_cast<uint32_t>(cur));
      carry = cur >> 32;
    }
    if (carry) r.push_back(static_cast<uint32_t>(carry));
    return r;
  }
  // requires |a| >= |b|
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> r;
    int64_t borrow = 0;
    for (size_t i = 0; i < a.size(); ++i) {
      int64_t cur = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
      borrow = cur < 0 ? 1 : 0;
      if (cur < 0) cur += (1LL << 32);
      r.push_back(static_cast<uint32_t>(cur));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  static std::vector<uint32_t> shl_mag(std::vector<uint32_t> a, int s) {
    if (s == 0) return a;
    uint32_t carry = 0;
    for (auto& l : a) {
      uint32_t nc = l >> (32 - s);
      l = (l << s) | carry;
      carry = nc;
    }
    if (carry) a.push_back(carry);
    return a;
  }
  static std::vector<uint32_t> shr_mag(std::vector<uint32_t> a, int s) {
    if (s == 0) return a;
    uint32_t carry = 0;
    for (size_t i = a.size(); i-- > 0;) {
      uint32_t nc = a[i] << (32 - s);
      a[i] = (a[i] >> s) | carry;
      carry = nc;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
};

// Exact rational numbers over BigInt, always reduced, denominator > 0.
class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(BigInt n) : num_(std::move(n)), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return (a.num_ * b.den_) < (b.num_ * a.den_);
  }

  std::string to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
  }

private:
  BigInt num_, den_;
  void normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (den_.is_negative()) { num_ = -num_; den_ = -den_; }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_zero() && !(g == BigInt(1))) { num_ = num_ / g; den_ = den_ / g; }
    if (num_.is_zero()) den_ = BigInt(1);
  }
};

}  // namespace kirbycalc

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace syncgame {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
// Small and boring on purpose: the algebra engine needs exact coefficients,
// not speed records.
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v) {  // NOLINT: implicit by design
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t m = v < 0 ? -static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    limbs_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
    if (m >> 32) limbs_.push_back(static_cast<std::uint32_t>(m >> 32));
  }

  static BigInt from_string(std::string_view s) {
    BigInt r;
    bool neg = false;
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) throw std::invalid_argument("BigInt: empty literal");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
      r.mul_small(10);
      r.add_small(static_cast<std::uint32_t>(s[i] - '0'));
    }
    if (neg && !r.is_zero()) r.sign_ = -r.sign_;
    return r;
  }

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }

  bool fits_int64() const {
    if (limbs_.size() > 2) return false;
    std::uint64_t m = magnitude_u64();
    if (sign_ >= 0) return m <= 0x7fffffffffffffffull;
    return m <= 0x8000000000000000ull;
  }
  std::int64_t to_int64() const {
    if (!fits_int64()) throw std::overflow_error("BigInt: does not fit int64");
    std::uint64_t m = magnitude_u64();
    return sign_ < 0 ? -static_cast<std::int64_t>(m) : static_cast<std::int64_t>(m);
  }

  friend bool operator==(const BigInt& a, const BigInt& b) {
    return a.sign_ == b.sign_ && a.limbs_ == b.limbs_;
  }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    int c = cmp_mag(a.limbs_, b.limbs_);
    return a.sign_ >= 0 ? c < 0 : c > 0;
  }
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  BigInt operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
  }

  friend BigInt operator+(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    BigInt r;
    if (a.sign_ == b.sign_) {
      r.limbs_ = add_mag(a.limbs_, b.limbs_);
      r.sign_ = a.sign_;
    } else {
      int c = cmp_mag(a.limbs_, b.limbs_);
      if (c == 0) return BigInt();
      if (c > 0) {
        r.limbs_ = sub_mag(a.limbs_, b.limbs_);
        r.sign_ = a.sign_;
      } else {
        r.limbs_ = sub_mag(b.limbs_, a.limbs_);
        r.sign_ = b.sign_;
      }
    }
    return r;
  }
  friend BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

  friend BigInt operator*(const BigInt& a, const BigInt& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = a.sign_ * b.sign_;
    r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        std::uint64_t cur = static_cast<std::uint64_t>(a.limbs_[i]) * b.limbs_[j] +
                            r.limbs_[i + j] + carry;
        r.limbs_[i + j] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
      }
      std::size_t k = i + b.limbs_.size();
      while (carry) {
        std::uint64_t cur = r.limbs_[k] + carry;
        r.limbs_[k] = static_cast<std::uint32_t>(cur);
        carry = cur >> 32;
        ++k;
      }
    }
    r.trim();
    return r;
  }

  // Truncated division (C semantics): quotient rounds toward zero,
  // remainder carries the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    if (cmp_mag(a.limbs_, b.limbs_) < 0) {
      q = BigInt();
      r = a;
      return;
    }
    std::vector<std::uint32_t> qm, rm;
    divmod_mag(a.limbs_, b.limbs_, qm, rm);
    q.limbs_ = std::move(qm);
    q.trim();
    q.sign_ = q.limbs_.empty() ? 0 : a.sign_ * b.sign_;
    r.limbs_ = std::move(rm);
    r.trim();
    r.sign_ = r.limbs_.empty() ? 0 : a.sign_;
  }
  friend BigInt operator/(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return q;
  }
  friend BigInt operator%(const BigInt& a, const BigInt& b) {
    BigInt q, r;
    divmod(a, b, q, r);
    return r;
  }

  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  BigInt abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  static BigInt gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    while (!b.is_zero()) {
      BigInt q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? BigInt(0) : a;
  }

  std::string to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = limbs_;
    std::string digits;
    while (!m.empty()) {
      // divide magnitude by 10^9, emit remainder
      std::uint64_t rem = 0;
      for (std::size_t i = m.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | m[i];
        m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!m.empty() && m.back() == 0) m.pop_back();
      std::string chunk = std::to_string(rem);
      if (!m.empty()) chunk = std::string(9 - chunk.size(), '0') + chunk;
      digits = chunk + digits;
    }
    return (sign_ < 0 ? "-" : "") + digits;
  }

  double to_double() const {
    double d = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) d = d * 4294967296.0 + limbs_[i];
    return sign_ < 0 ? -d : d;
  }

  std::size_t hash() const {
    std::size_t h = static_cast<std::size_t>(sign_ + 1);
    for (auto l : limbs_) h = h * 1000003u ^ l;
    return h;
  }

 private:
  int sign_ = 0;                      // -1, 0, +1
  std::vector<std::uint32_t> limbs_;  // little-endian, no trailing zeros

  std::uint64_t magnitude_u64() const {
    std::uint64_t m = 0;
    if (limbs_.size() > 1) m = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) m |= limbs_[0];
    return m;
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
    if (limbs_.empty()) sign_ = 0;
  }

  void mul_small(std::uint32_t f) {
    std::uint64_t carry = 0;
    for (auto& l : limbs_) {
      std::uint64_t cur = static_cast<std::uint64_t>(l) * f + carry;
      l = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
    trim();
  }
  void add_small(std::uint32_t v) {
    if (v == 0) return;
    if (sign_ == 0) sign_ = 1;
    std::uint64_t carry = v;
    for (auto& l : limbs_) {
      std::uint64_t cur = l + carry;
      l = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      if (!carry) break;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r = big;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::uint64_t cur = static_cast<std::uint64_t>(r[i]) + (i < small.size() ? small[i] : 0) + carry;
      r[i] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      if (!carry && i >= small.size()) break;
    }
    if (carry) r.push_back(static_cast<std::uint32_t>(carry));
    return r;
  }

  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r = a;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t cur = static_cast<std::int64_t>(r[i]) - (i < b.size() ? b[i] : 0) - borrow;
      borrow = cur < 0;
      if (cur < 0) cur += 1ll << 32;
      r[i] = static_cast<std::uint32_t>(cur);
      if (!borrow && i >= b.size()) break;
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }

  // Knuth algorithm D on magnitudes; requires |a| >= |b|, b nonzero.
  static void divmod_mag(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                         std::vector<std::uint32_t>& q, std::vector<std::uint32_t>& r) {
    if (b.size() == 1) {
      q.assign(a.size(), 0);
      std::uint64_t rem = 0;
      for (std::size_t i = a.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | a[i];
        q[i] = static_cast<std::uint32_t>(cur / b[0]);
        rem = cur % b[0];
      }
      r.clear();
      if (rem) r.push_back(static_cast<std::uint32_t>(rem));
      return;
    }
    // normalize so the divisor's top limb has its high bit set
    int shift = 0;
    for (std::uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
    a = shl_bits(a, shift);
    b = shl_bits(b, shift);
    const std::size_t n = b.size(), m = a.size() - n;
    a.push_back(0);
    q.assign(m + 1, 0);
    const std::uint64_t btop = b[n - 1], bsecond = b[n - 2];
    for (std::size_t j = m + 1; j-- > 0;) {
      std::uint64_t num = (static_cast<std::uint64_t>(a[j + n]) << 32) | a[j + n - 1];
      std::uint64_t qhat = num / btop, rhat = num % btop;
      while (qhat >> 32 || qhat * bsecond > ((rhat << 32) | a[j + n - 2])) {
        --qhat;
        rhat += btop;
        if (rhat >> 32) break;
      }
      // multiply-subtract qhat * b from a[j .. j+n]
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t prod = qhat * b[i] + carry;
        carry = prod >> 32;
        std::int64_t cur = static_cast<std::int64_t>(a[i + j]) -
                           static_cast<std::int64_t>(prod & 0xffffffffu) - borrow;
        borrow = cur < 0;
        if (cur < 0) cur += 1ll << 32;
        a[i + j] = static_cast<std::uint32_t>(cur);
      }
      std::int64_t cur = static_cast<std::int64_t>(a[j + n]) - static_cast<std::int64_t>(carry) - borrow;
      borrow = cur < 0;
      if (cur < 0) cur += 1ll << 32;
      a[j + n] = static_cast<std::uint32_t>(cur);
      if (borrow) {  // qhat was one too large: add b back
        --qhat;
        std::uint64_t c2 = 0;
        for (std::size_t i = 0; i < n; ++i) {
          std::uint64_t s = static_cast<std::uint64_t>(a[i + j]) + b[i] + c2;
          a[i + j] = static_cast<std::uint32_t>(s);
          c2 = s >> 32;
        }
        a[j + n] = static_cast<std::uint32_t>(a[j + n] + c2);
      }
      q[j] = static_cast<std::uint32_t>(qhat);
    }
    a.resize(n);
    r = shr_bits(a, shift);
    while (!r.empty() && r.back() == 0) r.pop_back();
    while (!q.empty() && q.back() == 0) q.pop_back();
  }

  static std::vector<std::uint32_t> shl_bits(const std::vector<std::uint32_t>& v, int s) {
    if (s == 0) return v;
    std::vector<std::uint32_t> r(v.size() + 1, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] |= v[i] << s;
      r[i + 1] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(v[i]) >> (32 - s));
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
  }
  static std::vector<std::uint32_t> shr_bits(const std::vector<std::uint32_t>& v, int s) {
    if (s == 0) return v;
    std::vector<std::uint32_t> r(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      r[i] = v[i] >> s;
      if (i + 1 < v.size()) r[i] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(v[i + 1]) << (32 - s));
    }
    return r;
  }
};

}  // namespace syncgame

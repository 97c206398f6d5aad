#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "k3lat/integer.hpp"

namespace k3lat {

// Exact rational number reduced into [0, Mod). Mod = 2 holds quadratic-form
// values in Q/2Z, Mod = 1 bilinear values in Q/Z.
template <int Mod>
class ModQ {
  static_assert(Mod == 1 || Mod == 2);

 public:
  ModQ() = default;

  ModQ(const Integer& num, const Integer& den) {
    if (den == 0) throw DomainError("ModQ: zero denominator");
    Integer n = num, d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const Integer m = d * Mod;
    n %= m;
    if (n < 0) n += m;
    const Integer g = gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = to_int64(n);
    den_ = to_int64(d);
  }

  static ModQ of(std::int64_t num, std::int64_t den) {
    ModQ r;
    r.assign(num, den);
    return r;
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  friend ModQ operator+(const ModQ& a, const ModQ& b) {
    ModQ r;
    r.assign(static_cast<__int128>(a.num_) * b.den_ +
                 static_cast<__int128>(b.num_) * a.den_,
             static_cast<__int128>(a.den_) * b.den_);
    return r;
  }
  ModQ operator-() const {
    ModQ r;
    r.assign(-static_cast<__int128>(num_), den_);
    return r;
  }
  friend ModQ operator-(const ModQ& a, const ModQ& b) { return a + (-b); }
  ModQ& operator+=(const ModQ& b) { return *this = *this + b; }

  ModQ times(std::int64_t k) const {
    ModQ r;
    r.assign(static_cast<__int128>(num_) * k, den_);
    return r;
  }

  // Same numerator and denominator viewed modulo another modulus.
  template <int M2>
  ModQ<M2> rescaled(std::int64_t k) const {
    return ModQ<M2>::of_wide(static_cast<__int128>(num_) * k, den_);
  }

  static ModQ of_wide(__int128 num, __int128 den) {
    ModQ r;
    r.assign(num, den);
    return r;
  }

  friend bool operator==(const ModQ&, const ModQ&) = default;
  friend auto operator<=>(const ModQ& a, const ModQ& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=>
           static_cast<__int128>(b.num_) * a.den_;
  }

  std::string str() const {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void assign(__int128 n, __int128 d) {
    if (d == 0) throw DomainError("ModQ: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const __int128 m = d * Mod;
    n %= m;
    if (n < 0) n += m;
    __int128 a = n, b = d;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

using QMod2 = ModQ<2>;
using QMod1 = ModQ<1>;

}  // namespace k3lat

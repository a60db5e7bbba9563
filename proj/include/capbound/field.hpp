#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace capbound {

// Ground field for matrix ranks: the rationals, or F_p for prime p.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
  static FieldSpec prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("FieldSpec: p is not prime");
    return FieldSpec{Kind::Prime, p};
  }
  static FieldSpec parse(const std::string& s) {
    if (s == "Q" || s == "q") return rationals();
    return prime(static_cast<std::uint32_t>(std::stoul(s)));
  }

  std::string str() const {
    return kind == Kind::Rationals ? "Q" : std::to_string(p);
  }
  bool operator==(const FieldSpec& o) const { return kind == o.kind && p == o.p; }
};

namespace detail {

inline std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p);
}

inline std::uint32_t mod_pow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::domain_error("mod_inv: zero");
  return mod_pow(a % p, p - 2, p);
}

}  // namespace detail

}  // namespace capbound

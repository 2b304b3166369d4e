#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lorlab {

/// Exact rational with 64-bit numerator/denominator, normalized, den > 0.
/// Comparisons cross-multiply in 128-bit so normalized values never overflow.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Rat() = default;

  static Rat of(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rat: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    Rat r;
    r.num = g ? n / g : 0;
    r.den = g ? d / g : 1;
    return r;
  }

  static Rat integer(std::int64_t n) { return of(n, 1); }

  /// Accepts "a/b", integers, and plain decimals ("1.5" -> 3/2, exact).
  static std::optional<Rat> parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    try {
      if (slash != std::string_view::npos) {
        const std::int64_t n = std::stoll(std::string(text.substr(0, slash)));
        const std::int64_t d = std::stoll(std::string(text.substr(slash + 1)));
        if (d == 0) return std::nullopt;
        return of(n, d);
      }
      const auto dot = text.find('.');
      if (dot == std::string_view::npos)
        return integer(std::stoll(std::string(text)));
      const std::string head(text.substr(0, dot));
      const std::string tail(text.substr(dot + 1));
      if (tail.size() > 15) return std::nullopt;
      for (char c : tail)
        if (c < '0' || c > '9') return std::nullopt;
      const bool neg = !head.empty() && head[0] == '-';
      std::int64_t whole = head.empty() || head == "-" ? 0 : std::stoll(head);
      std::int64_t scale = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
      std::int64_t frac = tail.empty() ? 0 : std::stoll(tail);
      if (whole < 0 || neg) return of(whole * scale - frac, scale);
      return of(whole * scale + frac, scale);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  /// Nearest rational with small denominator (continued fractions); throws if
  /// no denominator <= den_cap approximates x to rel_tol.
  static Rat from_double(double x, double rel_tol = 1e-12,
                         std::int64_t den_cap = 1'000'000'000) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rat: non-finite");
    const double tol = rel_tol * std::max(1.0, std::fabs(x));
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double v = x;
    for (int it = 0; it < 64; ++it) {
      const double fl = std::floor(v);
      if (fl > 9.2e18 || fl < -9.2e18) break;
      const auto a = static_cast<std::int64_t>(fl);
      const std::int64_t p2 = a * p1 + p0;
      const std::int64_t q2 = a * q1 + q0;
      if (q2 > den_cap || q2 < 0) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      if (std::fabs(x - static_cast<double>(p1) / static_cast<double>(q1)) <= tol)
        return of(p1, q1);
      const double rem = v - fl;
      if (rem < 1e-18) break;
      v = 1.0 / rem;
    }
    throw std::invalid_argument("Rat: no small rational within tolerance of " +
                                std::to_string(x));
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  bool is_negative() const { return num < 0; }

  Rat operator-() const { return of(-num, den); }
  Rat operator+(const Rat& o) const { return of(num * o.den + o.num * den, den * o.den); }
  Rat operator-(const Rat& o) const { return of(num * o.den - o.num * den, den * o.den); }
  Rat operator*(const Rat& o) const {
    // cross-reduce first to keep intermediates small
    const std::int64_t g1 = std::gcd(num < 0 ? -num : num, o.den);
    const std::int64_t g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    return of((num / g1) * (o.num / g2), (den / g2) * (o.den / g1));
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw std::invalid_argument("Rat: division by zero");
    return *this * of(o.den, o.num);
  }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Rational extended by +infinity; infinity compares greater than every
/// finite value.  Used for the secondary Lorentz/Besov exponents q, r.
struct ExtRat {
  bool inf = false;
  Rat fin;

  constexpr ExtRat() = default;

  static ExtRat infinity() {
    ExtRat e;
    e.inf = true;
    return e;
  }
  static ExtRat of(Rat v) {
    ExtRat e;
    e.fin = v;
    return e;
  }
  static ExtRat of(std::int64_t n, std::int64_t d = 1) { return of(Rat::of(n, d)); }

  /// Accepts everything Rat::parse does, plus "inf"/"Inf"/"INF"/"oo".
  static std::optional<ExtRat> parse(std::string_view text) {
    if (text == "inf" || text == "Inf" || text == "INF" || text == "oo")
      return infinity();
    if (auto r = Rat::parse(text)) return of(*r);
    return std::nullopt;
  }

  bool is_inf() const { return inf; }
  double value() const {
    return inf ? std::numeric_limits<double>::infinity() : fin.value();
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.fin == b.fin;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.fin < b.fin;
  }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  friend bool operator==(const ExtRat& a, const Rat& b) { return !a.inf && a.fin == b; }
  friend bool operator==(const Rat& a, const ExtRat& b) { return b == a; }
  friend bool operator<(const ExtRat& a, const Rat& b) { return !a.inf && a.fin < b; }
  friend bool operator<(const Rat& a, const ExtRat& b) { return b.inf || a < b.fin; }
  friend bool operator<=(const ExtRat& a, const Rat& b) { return !a.inf && a.fin <= b; }
  friend bool operator<=(const Rat& a, const ExtRat& b) { return b.inf || a <= b.fin; }
  friend bool operator>=(const ExtRat& a, const Rat& b) { return a.inf || a.fin >= b; }
  friend bool operator>=(const Rat& a, const ExtRat& b) { return !b.inf && a >= b.fin; }
  friend bool operator>(const ExtRat& a, const Rat& b) { return a.inf || a.fin > b; }
  friend bool operator>(const Rat& a, const ExtRat& b) { return !b.inf && a > b.fin; }

  friend ExtRat min(const ExtRat& a, const ExtRat& b) { return a < b ? a : b; }
  friend ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }

  std::string str() const { return inf ? "inf" : fin.str(); }
};

}  // namespace lorlab

#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "torsionlab/bitset.hpp"
#include "torsionlab/error.hpp"

namespace torsionlab {

/// A finite unital ring on element indices 0..order-1, given by full
/// addition and multiplication tables. Construction validates every ring
/// axiom exhaustively; a constructed FiniteRing is immutable.
class FiniteRing {
 public:
  using Table = std::vector<std::vector<Index>>;

  /// `display` optionally gives a printable name per element. `atoms` are
  /// extra names accepted by parse_element (matrix units and the like).
  FiniteRing(std::string name, const Table& add, const Table& mul, Index zero, Index one,
             std::vector<std::string> display = {},
             std::unordered_map<std::string, Index> atoms = {})
      : name_(std::move(name)), n_(add.size()), zero_(zero), one_(one),
        display_(std::move(display)), atoms_(std::move(atoms)) {
    load_tables(add, mul);
    validate();
    if (display_.empty()) {
      for (Index i = 0; i < n_; ++i) display_.push_back(std::to_string(i));
    }
  }

  std::size_t order() const noexcept { return n_; }
  Index zero() const noexcept { return zero_; }
  Index one() const noexcept { return one_; }
  const std::string& name() const noexcept { return name_; }

  Index add(Index a, Index b) const noexcept { return add_[a * n_ + b]; }
  Index mul(Index a, Index b) const noexcept { return mul_[a * n_ + b]; }
  Index neg(Index a) const noexcept { return neg_[a]; }
  Index sub(Index a, Index b) const noexcept { return add(a, neg(b)); }

  /// k-fold sum of x (k may be negative).
  Index multiple(Index x, long long k) const noexcept {
    if (k < 0) return multiple(neg(x), -k);
    Index acc = zero_;
    for (long long i = 0; i < k; ++i) acc = add(acc, x);
    return acc;
  }

  bool is_commutative() const noexcept {
    for (Index a = 0; a < n_; ++a)
      for (Index b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_idempotent(Index e) const noexcept { return mul(e, e) == e; }

  const std::string& display(Index i) const { return display_.at(i); }
  const std::vector<std::string>& display_names() const noexcept { return display_; }
  const std::unordered_map<std::string, Index>& atoms() const noexcept { return atoms_; }

  Table add_table() const { return unpack(add_); }
  Table mul_table() const { return unpack(mul_); }

  /// Same order, tables, zero and one.
  bool same_structure(const FiniteRing& o) const noexcept {
    return n_ == o.n_ && zero_ == o.zero_ && one_ == o.one_ && add_ == o.add_ && mul_ == o.mul_;
  }

 private:
  void load_tables(const Table& add, const Table& mul) {
    if (n_ == 0) throw ValidationError("ring order must be positive");
    auto load = [&](const Table& t, const char* which, std::vector<Index>& out) {
      if (t.size() != n_)
        throw ValidationError(std::string(which) + " table has " + std::to_string(t.size()) +
                              " rows, expected " + std::to_string(n_));
      out.resize(n_ * n_);
      for (std::size_t a = 0; a < n_; ++a) {
        if (t[a].size() != n_)
          throw ValidationError(std::string(which) + " table row " + std::to_string(a) + " has " +
                                std::to_string(t[a].size()) + " entries, expected " +
                                std::to_string(n_));
        for (std::size_t b = 0; b < n_; ++b) {
          if (t[a][b] >= n_)
            throw ValidationError(std::string(which) + " table entry (" + std::to_string(a) +
                                  "," + std::to_string(b) + ") = " + std::to_string(t[a][b]) +
                                  " is out of range");
          out[a * n_ + b] = t[a][b];
        }
      }
    };
    load(add, "add", add_);
    load(mul, "mul", mul_);
    if (zero_ >= n_) throw ValidationError("zero index out of range");
    if (one_ >= n_) throw ValidationError("one index out of range");
  }

  static std::string triple(Index a, Index b, Index c) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  }

  void validate() {
    const auto n = static_cast<Index>(n_);
    neg_.assign(n_, n);
    for (Index a = 0; a < n; ++a) {
      if (add(zero_, a) != a || add(a, zero_) != a)
        throw ValidationError("zero is not an additive identity at element " + std::to_string(a));
      for (Index b = 0; b < n; ++b) {
        if (add(a, b) != add(b, a))
          throw ValidationError("addition is not commutative at (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
        if (add(a, b) == zero_ && neg_[a] == n) neg_[a] = b;
      }
      if (neg_[a] == n)
        throw ValidationError("element " + std::to_string(a) + " has no additive inverse");
    }
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b)
        for (Index c = 0; c < n; ++c) {
          if (add(add(a, b), c) != add(a, add(b, c)))
            throw ValidationError("addition is not associative at " + triple(a, b, c));
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw ValidationError("multiplication is not associative at " + triple(a, b, c));
          if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
            throw ValidationError("left distributivity fails at " + triple(a, b, c));
          if (mul(add(a, b), c) != add(mul(a, c), mul(b, c)))
            throw ValidationError("right distributivity fails at " + triple(a, b, c));
        }
    for (Index a = 0; a < n; ++a)
      if (mul(one_, a) != a || mul(a, one_) != a)
        throw ValidationError("one is not a multiplicative identity at element " +
                              std::to_string(a));
    if (n_ > 1 && zero_ == one_) throw ValidationError("zero equals one in a ring of order > 1");
  }

  Table unpack(const std::vector<Index>& flat) const {
    Table t(n_, std::vector<Index>(n_));
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b) t[a][b] = flat[a * n_ + b];
    return t;
  }

  std::string name_;
  std::size_t n_;
  Index zero_;
  Index one_;
  std::vector<Index> add_;
  std::vector<Index> mul_;
  std::vector<Index> neg_;
  std::vector<std::string> display_;
  std::unordered_map<std::string, Index> atoms_;
};

using RingPtr = std::shared_ptr<const FiniteRing>;

/// Pointer identity or identical tables.
inline bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
  return a == b || (a && b && a->same_structure(*b));
}

inline void require_same_ring(const RingPtr& a, const RingPtr& b, const char* op) {
  if (!same_ring(a, b))
    throw PreconditionError(std::string(op) + ": ring mismatch (" + a->name() + " vs " +
                            b->name() + ")");
}

namespace detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require_prime(std::size_t p, const char* ctor) {
  if (!is_prime(p))
    throw ValidationError(std::string(ctor) + ": " + std::to_string(p) + " is not prime");
}

/// Display names for a ring whose elements are coefficient vectors over
/// GF(p) in the basis `units`, most significant digit first.
inline std::vector<std::string> matrix_display(std::size_t p, const std::vector<std::string>& units,
                                               Index one) {
  const std::size_t dim = units.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= p;
  std::vector<std::string> out(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::string s;
    std::size_t rest = idx;
    std::vector<std::size_t> digits(dim);
    for (std::size_t k = dim; k-- > 0;) {
      digits[k] = rest % p;
      rest /= p;
    }
    for (std::size_t k = 0; k < dim; ++k) {
      if (digits[k] == 0) continue;
      if (!s.empty()) s += "+";
      if (digits[k] > 1) s += std::to_string(digits[k]);
      s += units[k];
    }
    out[idx] = s.empty() ? "0" : s;
  }
  out[one] = "1";
  return out;
}

}  // namespace detail

/// Z/nZ with element k encoded as index k.
inline RingPtr cyclic_ring(std::size_t n) {
  if (n == 0) throw ValidationError("Z(n): n must be positive");
  FiniteRing::Table add(n, std::vector<Index>(n)), mul(n, std::vector<Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add[a][b] = static_cast<Index>((a + b) % n);
      mul[a][b] = static_cast<Index>((a * b) % n);
    }
  return std::make_shared<const FiniteRing>("Z(" + std::to_string(n) + ")", add, mul, 0,
                                            static_cast<Index>(1 % n));
}

inline RingPtr prime_field(std::size_t p) {
  detail::require_prime(p, "GF(p)");
  auto z = cyclic_ring(p);
  return std::make_shared<const FiniteRing>("GF(" + std::to_string(p) + ")", z->add_table(),
                                            z->mul_table(), 0, 1);
}

/// Upper triangular 2x2 matrices over GF(p); [[a,b],[0,c]] has index
/// a*p^2 + b*p + c, so e11 = p^2, e12 = p, e22 = 1.
inline RingPtr upper_triangular(std::size_t p) {
  detail::require_prime(p, "UT2(p)");
  const std::size_t n = p * p * p;
  auto decode = [p](std::size_t i) {
    return std::array<std::size_t, 3>{i / (p * p), (i / p) % p, i % p};
  };
  auto encode = [p](std::size_t a, std::size_t b, std::size_t c) {
    return static_cast<Index>(((a % p) * p + (b % p)) * p + (c % p));
  };
  FiniteRing::Table add(n, std::vector<Index>(n)), mul(n, std::vector<Index>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto [a, b, c] = decode(x);
      const auto [d, e, f] = decode(y);
      add[x][y] = encode(a + d, b + e, c + f);
      // [[a,b],[0,c]] * [[d,e],[0,f]] = [[ad, ae+bf],[0, cf]]
      mul[x][y] = encode(a * d, a * e + b * f, c * f);
    }
  const Index one = encode(1, 0, 1);
  const auto pi = static_cast<Index>(p);
  return std::make_shared<const FiniteRing>(
      "UT2(" + std::to_string(p) + ")", add, mul, 0, one,
      detail::matrix_display(p, {"e11", "e12", "e22"}, one),
      std::unordered_map<std::string, Index>{{"e11", pi * pi}, {"e12", pi}, {"e22", 1}});
}

/// Full 2x2 matrices over GF(p); [[a,b],[c,d]] has index a*p^3+b*p^2+c*p+d.
inline RingPtr matrix_ring(std::size_t p) {
  detail::require_prime(p, "M2(p)");
  const std::size_t n = p * p * p * p;
  auto decode = [p](std::size_t i) {
    return std::array<std::size_t, 4>{i / (p * p * p), (i / (p * p)) % p, (i / p) % p, i % p};
  };
  auto encode = [p](std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
    return static_cast<Index>((((a % p) * p + (b % p)) * p + (c % p)) * p + (d % p));
  };
  FiniteRing::Table add(n, std::vector<Index>(n)), mul(n, std::vector<Index>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto [a, b, c, d] = decode(x);
      const auto [e, f, g, h] = decode(y);
      add[x][y] = encode(a + e, b + f, c + g, d + h);
      mul[x][y] = encode(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h);
    }
  const Index one = encode(1, 0, 0, 1);
  const auto pi = static_cast<Index>(p);
  return std::make_shared<const FiniteRing>(
      "M2(" + std::to_string(p) + ")", add, mul, 0, one,
      detail::matrix_display(p, {"e11", "e12", "e21", "e22"}, one),
      std::unordered_map<std::string, Index>{
          {"e11", pi * pi * pi}, {"e12", pi * pi}, {"e21", pi}, {"e22", 1}});
}

/// R1 x R2 with (x, y) encoded as x * |R2| + y.
inline RingPtr product_ring(const RingPtr& r1, const RingPtr& r2) {
  const std::size_t n1 = r1->order(), n2 = r2->order(), n = n1 * n2;
  auto enc = [n2](Index x, Index y) { return static_cast<Index>(x * n2 + y); };
  FiniteRing::Table add(n, std::vector<Index>(n)), mul(n, std::vector<Index>(n));
  std::vector<std::string> display(n);
  for (Index x = 0; x < n; ++x) {
    const Index x1 = x / n2, x2 = x % n2;
    display[x] = "(" + r1->display(x1) + "," + r2->display(x2) + ")";
    for (Index y = 0; y < n; ++y) {
      const Index y1 = y / n2, y2 = y % n2;
      add[x][y] = enc(r1->add(x1, y1), r2->add(x2, y2));
      mul[x][y] = enc(r1->mul(x1, y1), r2->mul(x2, y2));
    }
  }
  const Index one = enc(r1->one(), r2->one());
  display[one] = "1";
  display[enc(r1->zero(), r2->zero())] = "0";
  return std::make_shared<const FiniteRing>("prod(" + r1->name() + "," + r2->name() + ")", add,
                                            mul, enc(r1->zero(), r2->zero()), one,
                                            std::move(display));
}

/// Resolves an element expression: a '+'-separated sum of terms, each an
/// optional '-' and an optional integer multiplier followed by an atom.
/// Atoms: "0", "1" (zero and identity), named units such as e11, "#k" (raw
/// index k), or a bare integer k (raw index k).
inline Index parse_element(const FiniteRing& ring, std::string_view text) {
  auto fail = [&](const std::string& why, std::size_t pos) -> Index {
    throw ParseError("bad element '" + std::string(text) + "' in " + ring.name() + ": " + why,
                     pos);
  };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto parse_uint = [&](std::string_view s, std::size_t pos) -> std::size_t {
    if (s.empty() || s.size() > 9) return fail("expected an integer", pos);
    std::size_t v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return fail("expected an integer", pos);
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };
  auto atom = [&](std::string_view s, std::size_t pos) -> Index {
    if (s == "0") return ring.zero();
    if (s == "1") return ring.one();
    if (auto it = ring.atoms().find(std::string(s)); it != ring.atoms().end()) return it->second;
    if (!s.empty() && s.front() == '#') s.remove_prefix(1), ++pos;
    const std::size_t v = parse_uint(s, pos);
    if (v >= ring.order()) return fail("index out of range", pos);
    return static_cast<Index>(v);
  };
  auto term = [&](std::string_view s, std::size_t pos) -> Index {
    s = trim(s);
    if (s.empty()) return fail("empty term", pos);
    bool negate = false;
    if (s.front() == '-') {
      negate = true;
      s = trim(s.substr(1));
      ++pos;
    }
    // A leading multiplier only applies when an atom name follows it.
    std::size_t digits = 0;
    while (digits < s.size() && std::isdigit(static_cast<unsigned char>(s[digits]))) ++digits;
    Index value;
    if (digits > 0 && digits < s.size()) {
      const auto k = parse_uint(s.substr(0, digits), pos);
      value = ring.multiple(atom(s.substr(digits), pos + digits), static_cast<long long>(k));
    } else {
      value = atom(s, pos);
    }
    return negate ? ring.neg(value) : value;
  };
  Index acc = ring.zero();
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      acc = ring.add(acc, term(text.substr(start, i - start), start));
      start = i + 1;
    }
  }
  return acc;
}

}  // namespace torsionlab

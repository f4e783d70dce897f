#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treq {

// Ordinal below w^w in Cantor normal form: a finite sum of terms w^e * c with
// strictly decreasing exponents e and coefficients c >= 1.  The empty term
// list is 0.  Values are immutable once constructed.
class Ordinal {
 public:
  struct Term {
    std::uint32_t exponent = 0;
    std::uint64_t coefficient = 0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Ordinal() = default;
  // Throws std::invalid_argument unless the term list is in canonical form.
  explicit Ordinal(std::vector<Term> terms);

  static Ordinal from_nat(std::uint64_t n);
  static Ordinal omega();

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_limit() const;  // nonzero with no w^0 tail
  bool is_successor() const { return !is_zero() && !is_limit(); }
  bool is_finite() const;
  // The natural number this ordinal denotes; requires is_finite().
  std::uint64_t as_nat() const;

  Ordinal successor() const;
  // Requires is_successor().
  Ordinal predecessor() const;

  // Compact textual form: "w^2*3+w+5", "w*2", "0".
  std::string render() const;
  // Inverse of render; tolerates whitespace around '+', '*', '^'.
  static Ordinal parse(const std::string& text);

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal&, const Ordinal&) = default;

 private:
  std::vector<Term> terms_;
};

// Ordinal sum a + b (left absorption: 1 + w == w).
Ordinal ord_add(const Ordinal& a, const Ordinal& b);

// The unique x with a + x == b; requires a <= b.
Ordinal ord_sub_left(const Ordinal& a, const Ordinal& b);

// Supremum (= maximum) of a nonempty finite set; throws on empty input.
Ordinal ord_sup(std::span<const Ordinal> values);

}  // namespace treq

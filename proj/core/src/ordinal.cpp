#include "treq/ordinal.hpp"

#include <cctype>
#include <stdexcept>

namespace treq {

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient == 0)
      throw std::invalid_argument("ordinal term with zero coefficient");
    if (i > 0 && terms_[i - 1].exponent <= terms_[i].exponent)
      throw std::invalid_argument("ordinal exponents must strictly decrease");
  }
}

Ordinal Ordinal::from_nat(std::uint64_t n) {
  if (n == 0) return Ordinal{};
  return Ordinal{{Term{0, n}}};
}

Ordinal Ordinal::omega() { return Ordinal{{Term{1, 1}}}; }

bool Ordinal::is_limit() const {
  return !terms_.empty() && terms_.back().exponent >= 1;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent == 0);
}

std::uint64_t Ordinal::as_nat() const {
  if (!is_finite()) throw std::invalid_argument("ordinal is not finite");
  return terms_.empty() ? 0 : terms_[0].coefficient;
}

Ordinal Ordinal::successor() const {
  std::vector<Term> t = terms_;
  if (!t.empty() && t.back().exponent == 0)
    t.back().coefficient += 1;
  else
    t.push_back(Term{0, 1});
  return Ordinal{std::move(t)};
}

Ordinal Ordinal::predecessor() const {
  if (!is_successor())
    throw std::invalid_argument("predecessor of a non-successor ordinal");
  std::vector<Term> t = terms_;
  if (t.back().coefficient > 1)
    t.back().coefficient -= 1;
  else
    t.pop_back();
  return Ordinal{std::move(t)};
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto &x = a.terms_, &y = b.terms_;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i].exponent != y[i].exponent)
      return x[i].exponent <=> y[i].exponent;
    if (x[i].coefficient != y[i].coefficient)
      return x[i].coefficient <=> y[i].coefficient;
  }
  // Equal prefix: the ordinal with more terms is the larger one.
  return x.size() <=> y.size();
}

Ordinal ord_add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const std::uint32_t lead = b.terms().front().exponent;
  std::vector<Ordinal::Term> out;
  // Terms of a below w^lead are absorbed by b's leading term.
  for (const auto& t : a.terms()) {
    if (t.exponent < lead) break;
    out.push_back(t);
  }
  std::size_t i = 0;
  if (!out.empty() && out.back().exponent == lead) {
    out.back().coefficient += b.terms().front().coefficient;
    i = 1;
  }
  for (; i < b.terms().size(); ++i) out.push_back(b.terms()[i]);
  return Ordinal{std::move(out)};
}

Ordinal ord_sub_left(const Ordinal& a, const Ordinal& b) {
  if (a > b) throw std::invalid_argument("ord_sub_left requires a <= b");
  const auto &x = a.terms(), &y = b.terms();
  std::size_t i = 0;
  while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
  if (i == x.size()) {
    // a is a prefix of b; the remainder is b's tail.
    return Ordinal{std::vector<Ordinal::Term>(y.begin() + i, y.end())};
  }
  // First differing term: either equal exponents with a smaller coefficient
  // in a, or a strictly larger exponent in b (a <= b rules out the rest).
  // In the latter case b's term swallows a's tail whole.
  std::vector<Ordinal::Term> out;
  if (x[i].exponent == y[i].exponent)
    out.push_back(Ordinal::Term{y[i].exponent, y[i].coefficient - x[i].coefficient});
  else
    out.push_back(y[i]);
  out.insert(out.end(), y.begin() + i + 1, y.end());
  return Ordinal{std::move(out)};
}

Ordinal ord_sup(std::span<const Ordinal> values) {
  if (values.empty()) throw std::invalid_argument("ord_sup of empty set");
  Ordinal best = values[0];
  for (const Ordinal& v : values.subspan(1))
    if (v > best) best = v;
  return best;
}

std::string Ordinal::render() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& t = terms_[i];
    if (i > 0) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent >= 2) out += '^' + std::to_string(t.exponent);
    if (t.coefficient >= 2) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

namespace {

struct Scanner {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::uint64_t number() {
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("ordinal parse: expected a number in '" + s + "'");
    std::uint64_t n = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      n = n * 10 + static_cast<std::uint64_t>(s[i] - '0');
      ++i;
    }
    return n;
  }
  bool done() {
    skip_ws();
    return i == s.size();
  }
};

}  // namespace

Ordinal Ordinal::parse(const std::string& text) {
  Scanner sc{text};
  std::vector<Term> terms;
  for (;;) {
    sc.skip_ws();
    if (sc.i >= text.size())
      throw std::invalid_argument("ordinal parse: empty term in '" + text + "'");
    if (text[sc.i] == 'w') {
      ++sc.i;
      std::uint32_t e = 1;
      if (sc.eat('^')) e = static_cast<std::uint32_t>(sc.number());
      std::uint64_t c = 1;
      if (sc.eat('*')) c = sc.number();
      terms.push_back(Term{e, c});
    } else {
      std::uint64_t c = sc.number();
      if (c == 0) {
        if (!terms.empty() || !sc.done())
          throw std::invalid_argument("ordinal parse: stray zero in '" + text + "'");
        return Ordinal{};
      }
      terms.push_back(Term{0, c});
    }
    if (sc.done()) break;
    if (!sc.eat('+'))
      throw std::invalid_argument("ordinal parse: expected '+' in '" + text + "'");
  }
  return Ordinal{std::move(terms)};  // ctor validates canonical form
}

}  // namespace treq

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "softtorus/matrix.hpp"

namespace softtorus {

// Chain indices are capped so runaway rewriting fails loudly.
inline constexpr std::int64_t kIndexCap = 1'000'000;

// One generator occurrence. The shift v carries index 0; the plain
// letter u is identified with the chain generator u_0 at parse time.
struct Letter {
  enum class Gen : std::uint8_t { ChainU = 0, ShiftV = 1 };

  Gen gen = Gen::ChainU;
  std::int32_t index = 0;  // chain index; always 0 for the shift
  bool starred = false;

  friend auto operator<=>(const Letter&, const Letter&) = default;
};

Letter chain_letter(std::int32_t n, bool starred = false);
Letter shift_letter(bool starred = false);
std::string letter_name(const Letter& l);

using Word = std::vector<Letter>;

// Formal *-polynomial: finite association word -> complex coefficient.
// The empty word is the unit. Exact-zero coefficients are never stored.
class NCPoly {
 public:
  using TermMap = std::map<Word, Complex>;

  NCPoly() = default;

  static NCPoly zero() { return NCPoly(); }
  static NCPoly unit() { return constant(Complex(1.0, 0.0)); }
  static NCPoly constant(Complex c);
  static NCPoly from_word(Word w, Complex c = Complex(1.0, 0.0));

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;      // zero or a multiple of the unit
  bool shift_free() const;       // no v letters
  int support_radius() const;    // max |n| over chain letters, 0 if none
  const TermMap& terms() const { return terms_; }

  void add_term(const Word& w, Complex c);

  NCPoly adjoint() const;

  NCPoly& operator+=(const NCPoly& o);
  NCPoly& operator-=(const NCPoly& o);
  NCPoly& operator*=(const NCPoly& o);
  NCPoly& operator*=(Complex c);

  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(NCPoly a, const NCPoly& b) { return a *= b; }
  friend NCPoly operator*(Complex c, NCPoly a) { return a *= c; }

  friend bool operator==(const NCPoly&, const NCPoly&) = default;

  // Canonical text; parse_poly(to_string()) reproduces the polynomial
  // exactly, coefficients included.
  std::string to_string() const;

 private:
  TermMap terms_;
};

// Grammar (whitespace ignored, apostrophe is the adjoint, '*' multiplies):
//   poly   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ['\''] | '(' poly ')' ['\''] | coeff ['\'']
//   atom   := 'u' | 'v' | 'u_' ['-'] digits | '1'
//   coeff  := real | '(' real ('+'|'-') real 'i' ')'
// Reals may carry a leading sign where a factor or complex part starts.
NCPoly parse_poly(std::string_view text);

// Normal-ordered presentation sum_k b_k * v^k with every b_k shift-free
// and freely reduced (adjacent u_n u_n* pairs cancelled).
class CrossedForm {
 public:
  const std::map<int, NCPoly>& components() const { return components_; }
  NCPoly component(int k) const;
  int max_shift_degree() const;  // max |k|, 0 when empty
  int window_radius() const { return window_radius_; }
  NCPoly reassemble() const;
  std::string to_string() const;

 private:
  friend CrossedForm normal_order(const NCPoly& p);
  std::map<int, NCPoly> components_;
  int window_radius_ = 0;
};

CrossedForm normal_order(const NCPoly& p);

// v-degree-zero part of the normal ordering
NCPoly cond_exp(const NCPoly& p);

int v_degree(const NCPoly& p);

// Matrix assignment for evaluation. All matrices must be square and of
// one common dimension; unitarity is the caller's business.
class Assignment {
 public:
  explicit Assignment(int dim);

  int dim() const { return dim_; }
  Assignment& set_shift(Matrix v);
  Assignment& set_chain(int n, Matrix u);
  bool has(const Letter& l) const;
  const Matrix& lookup(const Letter& l) const;  // UnassignedSymbol if absent

 private:
  void check(const Matrix& m) const;
  int dim_;
  std::map<std::pair<std::uint8_t, std::int32_t>, Matrix> slots_;
};

Matrix eval_poly(const NCPoly& p, const Assignment& assign);

}  // namespace softtorus

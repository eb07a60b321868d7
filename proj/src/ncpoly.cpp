#include "softtorus/ncpoly.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

namespace softtorus {

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

// coefficient as a standalone factor
std::string format_coeff(Complex c) {
  if (c.imag() == 0.0) return format_double(c.real());
  std::string s = "(";
  s += format_double(c.real());
  s += c.imag() < 0.0 ? "-" : "+";
  s += format_double(std::abs(c.imag()));
  s += "i)";
  return s;
}

std::string word_body(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += letter_name(w[i]);
  }
  return s;
}

}  // namespace

Letter chain_letter(std::int32_t n, bool starred) {
  return Letter{Letter::Gen::ChainU, n, starred};
}

Letter shift_letter(bool starred) {
  return Letter{Letter::Gen::ShiftV, 0, starred};
}

std::string letter_name(const Letter& l) {
  std::string s = l.gen == Letter::Gen::ShiftV
                      ? "v"
                      : "u_" + std::to_string(l.index);
  if (l.starred) s += "'";
  return s;
}

NCPoly NCPoly::constant(Complex c) {
  NCPoly p;
  p.add_term(Word{}, c);
  return p;
}

NCPoly NCPoly::from_word(Word w, Complex c) {
  NCPoly p;
  p.add_term(w, c);
  return p;
}

bool NCPoly::is_constant() const {
  if (terms_.empty()) return true;
  return terms_.size() == 1 && terms_.begin()->first.empty();
}

bool NCPoly::shift_free() const {
  for (const auto& [w, c] : terms_) {
    for (const Letter& l : w) {
      if (l.gen == Letter::Gen::ShiftV) return false;
    }
  }
  return true;
}

int NCPoly::support_radius() const {
  int radius = 0;
  for (const auto& [w, c] : terms_) {
    for (const Letter& l : w) {
      if (l.gen == Letter::Gen::ChainU) {
        radius = std::max(radius, std::abs(static_cast<int>(l.index)));
      }
    }
  }
  return radius;
}

void NCPoly::add_term(const Word& w, Complex c) {
  if (c == Complex(0.0, 0.0)) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0, 0.0)) terms_.erase(it);
  }
}

NCPoly NCPoly::adjoint() const {
  NCPoly out;
  for (const auto& [w, c] : terms_) {
    Word rw(w.rbegin(), w.rend());
    for (Letter& l : rw) l.starred = !l.starred;
    out.add_term(rw, std::conj(c));
  }
  return out;
}

NCPoly& NCPoly::operator+=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

NCPoly& NCPoly::operator-=(const NCPoly& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

NCPoly& NCPoly::operator*=(const NCPoly& o) {
  NCPoly out;
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : o.terms_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add_term(w, c1 * c2);
    }
  }
  terms_ = std::move(out.terms_);
  return *this;
}

NCPoly& NCPoly::operator*=(Complex c) {
  if (c == Complex(0.0, 0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) coeff *= c;
  return *this;
}

std::string NCPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    Complex coeff = c;
    if (first) {
      first = false;
    } else if (coeff.imag() == 0.0 && coeff.real() < 0.0) {
      s += " - ";
      coeff = -coeff;
    } else {
      s += " + ";
    }
    if (w.empty()) {
      s += format_coeff(coeff);
    } else if (coeff == Complex(1.0, 0.0)) {
      s += word_body(w);
    } else {
      s += format_coeff(coeff);
      s += "*";
      s += word_body(w);
    }
  }
  return s;
}

// ---- parser ------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  NCPoly run() {
    NCPoly p = parse_poly();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    raise(ErrorCode::SyntaxError,
          what + " at position " + std::to_string(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ == text_.size();
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NCPoly parse_poly() {
    NCPoly p = parse_term();
    for (;;) {
      if (consume('+')) {
        p += parse_term();
      } else if (consume('-')) {
        p -= parse_term();
      } else {
        break;
      }
    }
    return p;
  }

  NCPoly parse_term() {
    NCPoly f = parse_factor();
    while (consume('*')) f *= parse_factor();
    return f;
  }

  NCPoly parse_factor() {
    if (at_end()) fail("expected a factor");
    const char c = text_[pos_];
    if (c == 'u') return parse_chain_atom();
    if (c == 'v') {
      ++pos_;
      return NCPoly::from_word({shift_letter(consume('\''))});
    }
    if (c == '(') return parse_paren();
    if (c == '-' || c == '.' ||
        std::isdigit(static_cast<unsigned char>(c))) {
      const auto val = try_real();
      if (!val) fail("malformed numeric literal");
      Complex coeff(*val, 0.0);
      if (consume('\'')) coeff = std::conj(coeff);
      return NCPoly::constant(coeff);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  NCPoly parse_chain_atom() {
    ++pos_;  // 'u'
    std::int64_t n = 0;
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      bool neg = false;
      if (pos_ < text_.size() && text_[pos_] == '-') {
        neg = true;
        ++pos_;
      }
      if (pos_ == text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected digits after 'u_'");
      }
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + (text_[pos_] - '0');
        if (n > kIndexCap) {
          raise(ErrorCode::IndexOverflow,
                "chain index exceeds the cap of " + std::to_string(kIndexCap));
        }
        ++pos_;
      }
      if (neg) n = -n;
    }
    return NCPoly::from_word(
        {chain_letter(static_cast<std::int32_t>(n), consume('\''))});
  }

  NCPoly parse_paren() {
    const std::size_t open = pos_;
    ++pos_;  // '('
    if (auto c = try_complex_tail()) {
      Complex coeff = *c;
      if (consume('\'')) coeff = std::conj(coeff);
      return NCPoly::constant(coeff);
    }
    pos_ = open + 1;
    NCPoly p = parse_poly();
    if (!consume(')')) fail("expected ')'");
    if (consume('\'')) p = p.adjoint();
    return p;
  }

  // right after '(': real ('+'|'-') real 'i' ')'; restores position on
  // mismatch so the caller can fall back to a parenthesized polynomial
  std::optional<Complex> try_complex_tail() {
    const std::size_t save = pos_;
    skip_ws();
    const auto re = try_real();
    if (!re) {
      pos_ = save;
      return std::nullopt;
    }
    double sign;
    if (consume('+')) {
      sign = 1.0;
    } else if (consume('-')) {
      sign = -1.0;
    } else {
      pos_ = save;
      return std::nullopt;
    }
    skip_ws();
    const auto im = try_real();
    if (!im || !consume('i') || !consume(')')) {
      pos_ = save;
      return std::nullopt;
    }
    return Complex(*re, sign * *im);
  }

  std::optional<double> try_real() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t p = pos_;
    if (p < text_.size() && text_[p] == '-') ++p;
    std::size_t digits = 0;
    while (p < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[p]))) {
      ++p;
      ++digits;
    }
    if (p < text_.size() && text_[p] == '.') {
      ++p;
      while (p < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[p]))) {
        ++p;
        ++digits;
      }
    }
    if (digits == 0) return std::nullopt;
    if (p < text_.size() && (text_[p] == 'e' || text_[p] == 'E')) {
      std::size_t q = p + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      std::size_t exp_digits = 0;
      while (q < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[q]))) {
        ++q;
        ++exp_digits;
      }
      if (exp_digits > 0) p = q;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text_.data() + start, text_.data() + p, value);
    if (ec != std::errc() || ptr != text_.data() + p) return std::nullopt;
    pos_ = p;
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

NCPoly parse_poly(std::string_view text) { return Parser(text).run(); }

// ---- normal ordering -----------------------------------------------------

CrossedForm normal_order(const NCPoly& p) {
  CrossedForm cf;
  for (const auto& [word, coeff] : p.terms()) {
    int k = 0;
    Word chain;
    for (const Letter& l : word) {
      if (l.gen == Letter::Gen::ShiftV) {
        k += l.starred ? -1 : +1;
        continue;
      }
      const std::int64_t idx = static_cast<std::int64_t>(l.index) + k;
      if (idx > kIndexCap || idx < -kIndexCap) {
        raise(ErrorCode::IndexOverflow,
              "rewriting pushed a chain index past the cap");
      }
      const Letter moved = chain_letter(static_cast<std::int32_t>(idx),
                                        l.starred);
      // free reduction: u_n u_n' and u_n' u_n collapse to the unit
      if (!chain.empty() && chain.back().index == moved.index &&
          chain.back().starred != moved.starred) {
        chain.pop_back();
      } else {
        chain.push_back(moved);
      }
    }
    cf.components_[k].add_term(chain, coeff);
  }
  for (auto it = cf.components_.begin(); it != cf.components_.end();) {
    it = it->second.is_zero() ? cf.components_.erase(it) : std::next(it);
  }
  int radius = 0;
  for (const auto& [k, b] : cf.components_) {
    radius = std::max(radius, b.support_radius());
  }
  cf.window_radius_ = radius;
  return cf;
}

NCPoly CrossedForm::component(int k) const {
  const auto it = components_.find(k);
  return it == components_.end() ? NCPoly::zero() : it->second;
}

int CrossedForm::max_shift_degree() const {
  int deg = 0;
  for (const auto& [k, b] : components_) deg = std::max(deg, std::abs(k));
  return deg;
}

NCPoly CrossedForm::reassemble() const {
  NCPoly out;
  for (const auto& [k, b] : components_) {
    Word tail(static_cast<std::size_t>(std::abs(k)), shift_letter(k < 0));
    NCPoly vk = NCPoly::from_word(tail);
    out += b * vk;
  }
  return out;
}

std::string CrossedForm::to_string() const {
  if (components_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [k, b] : components_) {
    if (!first) s += " + ";
    first = false;
    std::string tail;
    for (int i = 0; i < std::abs(k); ++i) {
      if (i) tail += "*";
      tail += (k < 0) ? "v'" : "v";
    }
    if (b == NCPoly::unit()) {
      s += (k == 0) ? "1" : tail;
    } else {
      s += "(" + b.to_string() + ")";
      if (k != 0) s += "*" + tail;
    }
  }
  return s;
}

NCPoly cond_exp(const NCPoly& p) { return normal_order(p).component(0); }

int v_degree(const NCPoly& p) { return normal_order(p).max_shift_degree(); }

// ---- evaluation ----------------------------------------------------------

Assignment::Assignment(int dim) : dim_(dim) {
  if (dim < 1) raise(ErrorCode::InvalidArgument, "assignment dimension < 1");
}

void Assignment::check(const Matrix& m) const {
  if (m.rows() != m.cols() || m.rows() != dim_) {
    raise(ErrorCode::DimensionMismatch,
          "assigned matrix is " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()) + ", expected " + std::to_string(dim_) +
              "x" + std::to_string(dim_));
  }
  require_finite(m);
}

Assignment& Assignment::set_shift(Matrix v) {
  check(v);
  slots_.insert_or_assign({static_cast<std::uint8_t>(Letter::Gen::ShiftV), 0},
                          std::move(v));
  return *this;
}

Assignment& Assignment::set_chain(int n, Matrix u) {
  check(u);
  slots_.insert_or_assign(
      {static_cast<std::uint8_t>(Letter::Gen::ChainU), n}, std::move(u));
  return *this;
}

bool Assignment::has(const Letter& l) const {
  return slots_.count({static_cast<std::uint8_t>(l.gen),
                       l.gen == Letter::Gen::ShiftV ? 0 : l.index}) > 0;
}

const Matrix& Assignment::lookup(const Letter& l) const {
  const auto it = slots_.find({static_cast<std::uint8_t>(l.gen),
                               l.gen == Letter::Gen::ShiftV ? 0 : l.index});
  if (it == slots_.end()) {
    raise(ErrorCode::UnassignedSymbol,
          "no matrix assigned to " + letter_name(l));
  }
  return it->second;
}

Matrix eval_poly(const NCPoly& p, const Assignment& assign) {
  const int d = assign.dim();
  Matrix acc = Matrix::Zero(d, d);
  for (const auto& [word, coeff] : p.terms()) {
    Matrix m = Matrix::Identity(d, d);
    for (const Letter& l : word) {
      const Matrix& g = assign.lookup(l);
      if (l.starred) {
        m = m * g.adjoint();
      } else {
        m = m * g;
      }
    }
    acc += coeff * m;
  }
  return acc;
}

}  // namespace softtorus

#include "prophecke/expr.hpp"

#include <cctype>
#include <vector>

namespace prophecke {

namespace {

class Parser {
 public:
  Parser(const HeckeAlgebra* H, const ProPWeyl& W, const std::string& s) : H_(H), W_(W), s_(s) {}

  HeckeElement parse_all() {
    HeckeElement x = expr();
    skip();
    if (i_ != s_.size()) throw ParseError(i_, std::string("unexpected '") + s_[i_] + "'");
    return x;
  }

  W1 element_all() {
    W1 w = elem();
    skip();
    if (i_ != s_.size()) throw ParseError(i_, std::string("unexpected '") + s_[i_] + "'");
    return w;
  }

 private:
  const Field& F() const { return H_->F(); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      skip();
      throw ParseError(i_, std::string("expected '") + c + "'" +
                               (i_ < s_.size() ? std::string(", found '") + s_[i_] + "'" : std::string(" at end of input")));
    }
  }
  bool at_digit() {
    skip();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  long long integer() {
    skip();
    std::size_t start = i_;
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) throw ParseError(start, "expected an integer");
    long long v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_] - '0');
      if (v > 1000000000LL) throw ParseError(start, "integer too large");
      ++i_;
    }
    return neg ? -v : v;
  }
  std::vector<long long> int_list() {
    std::vector<long long> v;
    expect('(');
    if (accept(')')) return v;
    do v.push_back(integer());
    while (accept(','));
    expect(')');
    return v;
  }
  std::string word() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    return s_.substr(st, i_ - st);
  }

  HeckeElement expr() {
    HeckeElement x = term();
    for (;;) {
      if (accept('+')) x = H_->add(x, term());
      else if (accept('-')) x = H_->sub(x, term());
      else return x;
    }
  }
  HeckeElement term() {
    HeckeElement x = unary();
    while (accept('*')) x = H_->mul(x, unary());
    return x;
  }
  HeckeElement unary() {
    if (accept('-')) return H_->scale(F().neg(1), unary());
    return power();
  }
  HeckeElement power() {
    HeckeElement x = primary();
    if (accept('^')) {
      std::size_t at = i_;
      long long e = integer();
      if (e < 0) throw ParseError(at, "negative exponent");
      if (e > 64) throw ParseError(at, "exponent too large");
      HeckeElement r = H_->one();
      for (long long k = 0; k < e; ++k) r = H_->mul(r, x);
      return r;
    }
    return x;
  }
  HeckeElement primary() {
    skip();
    if (i_ >= s_.size()) throw ParseError(i_, "unexpected end of input");
    if (accept('(')) {
      HeckeElement x = expr();
      expect(')');
      return x;
    }
    if (at_digit()) {
      long long v = integer();
      return H_->scale(F().from_int(v), H_->one());
    }
    std::size_t start = i_;
    std::string name = word();
    if (name != "T" && name != "Tstar" && name != "E" && name != "z")
      throw ParseError(start, name.empty() ? "expected a literal" : "unknown literal '" + name + "' (expected T, Tstar, E or z)");
    expect('[');
    std::size_t estart = i_;
    W1 w = elem();
    expect(']');
    if (name == "T") return H_->T(w);
    if (name == "Tstar") return H_->t_star(w);
    if (name == "E") return H_->e_of(w);
    if (!W_.is_lambda(w)) throw ParseError(estart, "z[...] needs an element of Lambda(1)");
    return H_->z_of(w);
  }

  W1 elem() {
    const int n = W_.n();
    const ZKappa& zk = W_.zk();
    W1 out;
    skip();
    if (peek('(')) {
      std::size_t st = i_;
      auto mu = int_list();
      if (static_cast<int>(mu.size()) != n)
        throw ParseError(st, "expected " + std::to_string(n) + " coordinates for nu, got " + std::to_string(mu.size()));
      for (int k = 0; k < n; ++k) out.mu[k] = static_cast<std::int32_t>(mu[k]);
      if (accept(',')) {
        std::size_t tp = i_;
        if (peek('(')) out.t = zk_coords(tp, int_list());
        else {
          long long t = integer();
          if (t < 0 || t >= zk.size())
            throw ParseError(tp, "Z_kappa index " + std::to_string(t) + " outside [0, " + std::to_string(zk.size()) + ")");
          out.t = static_cast<int>(t);
        }
      }
    }
    skip();
    if (i_ < s_.size() && s_[i_] == 't') {
      std::size_t tp = i_;
      ++i_;
      out.t = zk_coords(tp, int_list());
    }
    skip();
    if (i_ < s_.size() && s_[i_] == 'n') ++i_;
    bool first = true;
    for (;;) {
      skip();
      std::size_t lp = i_;
      if (i_ < s_.size() && s_[i_] == 'e' && first) {
        ++i_;
        break;
      }
      if (i_ >= s_.size() || s_[i_] != 's') {
        if (!first && lp > 0 && s_[lp - 1] == '*') throw ParseError(lp, "expected a letter s<i>");
        break;
      }
      ++i_;
      int s;
      if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        long long k = integer();
        const int r = W_.rs().rank_ss();
        if (k == 0) {
          if (W_.num_affine_simple() == r) throw ParseError(lp, "no affine simple reflection (semisimple rank 0)");
          s = r;
        } else if (k > r) {
          throw ParseError(lp, "simple index " + std::to_string(k) + " exceeds the semisimple rank " + std::to_string(r));
        } else {
          s = static_cast<int>(k) - 1;
        }
      } else {
        if (W_.rs().rank_ss() != 1) throw ParseError(lp, "bare 's' needs semisimple rank one; write s1, s2, ...");
        s = 0;
      }
      out = W_.mul(out, W_.affine_lift(s));
      first = false;
      skip();
      if (i_ + 1 < s_.size() && s_[i_] == '*' && s_[i_ + 1] == 's') ++i_;
    }
    return out;
  }

  int zk_coords(std::size_t pos, const std::vector<long long>& c) {
    const auto& ord = W_.zk().orders();
    if (c.size() != ord.size())
      throw ParseError(pos, "expected " + std::to_string(ord.size()) + " Z_kappa coordinates, got " + std::to_string(c.size()));
    return W_.zk().from_coords(c);
  }

  const HeckeAlgebra* H_;
  const ProPWeyl& W_;
  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

HeckeElement evaluate_expression(const HeckeAlgebra& H, const std::string& text) {
  return Parser(&H, H.W(), text).parse_all();
}

W1 parse_element(const ProPWeyl& W, const std::string& text) { return Parser(nullptr, W, text).element_all(); }

std::string print_element(const HeckeAlgebra& H, const HeckeElement& x, PrintBasis b) {
  switch (b) {
    case PrintBasis::kT:
      return H.to_string(x, "T");
    case PrintBasis::kTstar:
      return H.to_string(H.star_coords(x), "Tstar");
    case PrintBasis::kE:
      return H.to_string(H.e_coords(x), "E");
  }
  return "";
}

}  // namespace prophecke

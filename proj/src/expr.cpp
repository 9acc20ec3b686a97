#include "hyperlap/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include "hyperlap/error.hpp"

namespace hyperlap {

namespace ex {
namespace {
Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }
}  // namespace

Expr constant(cplx v) { return make(Node{Op::constant, v, {}, 0, 0.0, nullptr, nullptr}); }
Expr var(const std::string& name) { return make(Node{Op::variable, {}, name, 0, 0.0, nullptr, nullptr}); }
Expr add(Expr a, Expr b) { return make(Node{Op::add, {}, {}, 0, 0.0, std::move(a), std::move(b)}); }
Expr sub(Expr a, Expr b) { return make(Node{Op::sub, {}, {}, 0, 0.0, std::move(a), std::move(b)}); }
Expr mul(Expr a, Expr b) { return make(Node{Op::mul, {}, {}, 0, 0.0, std::move(a), std::move(b)}); }
Expr div(Expr a, Expr b) { return make(Node{Op::div, {}, {}, 0, 0.0, std::move(a), std::move(b)}); }
Expr neg(Expr a) { return make(Node{Op::neg, {}, {}, 0, 0.0, std::move(a), nullptr}); }
Expr pow(Expr a, int n) { return make(Node{Op::pow, {}, {}, n, 0.0, std::move(a), nullptr}); }
Expr exp(Expr a) { return make(Node{Op::exp, {}, {}, 0, 0.0, std::move(a), nullptr}); }
Expr log(Expr a, double cut) { return make(Node{Op::log, {}, {}, 0, cut, std::move(a), nullptr}); }
Expr sqrt(Expr a) { return make(Node{Op::sqrt, {}, {}, 0, 0.0, std::move(a), nullptr}); }
}  // namespace ex

cplx log_with_cut(cplx w, double cut) {
  // arg taken in (cut - 2pi, cut]
  double a = std::arg(w);
  const double two_pi = 2 * std::numbers::pi;
  double k = std::ceil((a - cut) / two_pi);
  a -= two_pi * k;
  return {std::log(std::abs(w)), a};
}

namespace {

cplx ipow(cplx x, int n) {
  if (n < 0) return 1.0 / ipow(x, -n);
  cplx r = 1.0;
  while (n) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr run() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "empty expression");
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw SyntaxError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw SyntaxError(pos_, std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = ex::add(lhs, term());
      else if (accept('-')) lhs = ex::sub(lhs, term());
      else return lhs;
    }
  }
  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = ex::mul(lhs, unary());
      else if (accept('/')) lhs = ex::div(lhs, unary());
      else return lhs;
    }
  }
  Expr unary() {
    if (accept('-')) return ex::neg(unary());
    if (accept('+')) return unary();
    return power();
  }
  Expr power() {
    Expr base = primary();
    if (accept('^')) {
      bool paren = accept('(');
      int sign = 1;
      if (accept('-')) sign = -1;
      else accept('+');
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) throw SyntaxError(start, "integer exponent expected");
      int n = 0;
      auto res = std::from_chars(s_.data() + start, s_.data() + pos_, n);
      if (res.ec != std::errc()) throw SyntaxError(start, "exponent out of range");
      if (paren) expect(')');
      return ex::pow(base, sign * n);
    }
    return base;
  }
  double number_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      } else {
        pos_ = save;
      }
    }
    double v = 0;
    auto res = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != s_.data() + pos_ || !std::isfinite(v))
      throw SyntaxError(start, "malformed number");
    return v;
  }
  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  Expr primary() {
    skip();
    if (pos_ >= s_.size()) throw SyntaxError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return ex::constant(number_literal());
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string name = ident();
      if (peek('(')) {
        ++pos_;
        Expr arg = expr();
        if (name == "exp" || name == "sqrt") {
          expect(')');
          return name == "exp" ? ex::exp(arg) : ex::sqrt(arg);
        }
        if (name == "log") {
          double cut = kPrincipalCut;
          if (accept(',')) {
            std::size_t kw = pos_;
            if (ident() != "cut") throw SyntaxError(kw, "expected cut=");
            expect('=');
            Expr ce = expr();
            if (!is_constant(ce)) throw SyntaxError(kw, "cut angle must be constant");
            cut = evaluate(ce, {}).real();
          }
          expect(')');
          return ex::log(arg, cut);
        }
        throw Error(Errc::unknown_identifier, "unknown function '" + name + "' at position " + std::to_string(start));
      }
      if (name == "i" || name == "I") return ex::constant(cplx(0, 1));
      if (name == "pi") return ex::constant(std::numbers::pi);
      return ex::var(name);
    }
    throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- printer

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int precedence(const Expr& e) {
  switch (e->op) {
    case Op::add:
    case Op::sub: return 1;
    case Op::mul:
    case Op::div: return 2;
    case Op::neg: return 3;
    case Op::pow: return 4;
    case Op::constant: {
      cplx v = e->value;
      if (v.imag() == 0 && v.real() >= 0 && !std::signbit(v.real())) return 5;
      if (v == cplx(0, 1)) return 5;
      return 5;  // printed parenthesized
    }
    default: return 5;
  }
}

std::string print_prec(const Expr& e, int min_prec);

std::string print_constant(cplx v) {
  if (v.imag() == 0 && !std::signbit(v.real())) return fmt_double(v.real());
  if (v == cplx(0, 1)) return "i";
  if (v.imag() == 0) return "(-" + fmt_double(-v.real()) + ")";
  std::string im = fmt_double(std::abs(v.imag())) + "*i";
  if (v.real() == 0) return v.imag() < 0 ? "(-" + im + ")" : "(" + im + ")";
  return "(" + fmt_double(v.real()) + (v.imag() < 0 ? "-" : "+") + im + ")";
}

std::string print_node(const Expr& e) {
  switch (e->op) {
    case Op::constant: return print_constant(e->value);
    case Op::variable: return e->name;
    case Op::add: return print_prec(e->a, 1) + " + " + print_prec(e->b, 2);
    case Op::sub: return print_prec(e->a, 1) + " - " + print_prec(e->b, 2);
    case Op::mul: return print_prec(e->a, 2) + "*" + print_prec(e->b, 3);
    case Op::div: return print_prec(e->a, 2) + "/" + print_prec(e->b, 3);
    case Op::neg: return "-" + print_prec(e->a, 3);
    case Op::pow: {
      std::string ex = e->exponent < 0 ? "(" + std::to_string(e->exponent) + ")" : std::to_string(e->exponent);
      return print_prec(e->a, 5) + "^" + ex;
    }
    case Op::exp: return "exp(" + print(e->a) + ")";
    case Op::sqrt: return "sqrt(" + print(e->a) + ")";
    case Op::log:
      if (e->cut == kPrincipalCut) return "log(" + print(e->a) + ")";
      return "log(" + print(e->a) + ", cut=" + fmt_double(e->cut) + ")";
  }
  return "?";
}

std::string print_prec(const Expr& e, int min_prec) {
  std::string s = print_node(e);
  return precedence(e) < min_prec ? "(" + s + ")" : s;
}

// ---------------------------------------------------------------- simplifying constructors

bool is_const(const Expr& e, cplx v) { return e->op == Op::constant && e->value == v; }

Expr s_add(Expr a, Expr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  if (a->op == Op::constant && b->op == Op::constant) return ex::constant(a->value + b->value);
  return ex::add(a, b);
}
Expr s_neg(Expr a) {
  if (a->op == Op::constant) return ex::constant(cplx(0.0) - a->value);
  if (a->op == Op::neg) return a->a;
  return ex::neg(a);
}
Expr s_sub(Expr a, Expr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return s_neg(b);
  if (a->op == Op::constant && b->op == Op::constant) return ex::constant(a->value - b->value);
  return ex::sub(a, b);
}
Expr s_mul(Expr a, Expr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return ex::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (a->op == Op::constant && b->op == Op::constant) return ex::constant(a->value * b->value);
  return ex::mul(a, b);
}
Expr s_div(Expr a, Expr b) {
  if (is_const(a, 0.0)) return ex::constant(0.0);
  if (is_const(b, 1.0)) return a;
  return ex::div(a, b);
}
Expr s_pow(Expr a, int n) {
  if (n == 0) return ex::constant(1.0);
  if (n == 1) return a;
  return ex::pow(a, n);
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (!e) return;
  if (e->op == Op::variable) out.insert(e->name);
  collect_vars(e->a, out);
  collect_vars(e->b, out);
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

std::string print(const Expr& e) { return print_node(e); }

bool structurally_equal(const Expr& a, const Expr& b) {
  if (!a || !b) return !a && !b;
  if (a->op != b->op) return false;
  switch (a->op) {
    case Op::constant: return a->value == b->value;
    case Op::variable: return a->name == b->name;
    case Op::pow:
      if (a->exponent != b->exponent) return false;
      break;
    case Op::log:
      if (a->cut != b->cut) return false;
      break;
    default: break;
  }
  return structurally_equal(a->a, b->a) && structurally_equal(a->b, b->b);
}

Expr diff(const Expr& e, const std::string& v) {
  switch (e->op) {
    case Op::constant: return ex::constant(0.0);
    case Op::variable: return ex::constant(e->name == v ? 1.0 : 0.0);
    case Op::add: return s_add(diff(e->a, v), diff(e->b, v));
    case Op::sub: return s_sub(diff(e->a, v), diff(e->b, v));
    case Op::mul: return s_add(s_mul(diff(e->a, v), e->b), s_mul(e->a, diff(e->b, v)));
    case Op::div: {
      Expr da = diff(e->a, v), db = diff(e->b, v);
      if (is_const(db, 0.0)) return s_div(da, e->b);
      return s_div(s_sub(s_mul(da, e->b), s_mul(e->a, db)), s_pow(e->b, 2));
    }
    case Op::neg: return s_neg(diff(e->a, v));
    case Op::pow: {
      Expr da = diff(e->a, v);
      return s_mul(s_mul(ex::constant(static_cast<double>(e->exponent)), s_pow(e->a, e->exponent - 1)), da);
    }
    case Op::exp: return s_mul(e, diff(e->a, v));
    case Op::log: return s_div(diff(e->a, v), e->a);
    case Op::sqrt: return s_div(diff(e->a, v), s_mul(ex::constant(2.0), e));
  }
  return ex::constant(0.0);
}

std::vector<std::string> free_variables(const Expr& e) {
  std::set<std::string> s;
  collect_vars(e, s);
  return {s.begin(), s.end()};
}

bool is_constant(const Expr& e) { return free_variables(e).empty(); }

VarBinding bind_indexed(const std::string& stem, int n) {
  VarBinding b;
  for (int k = 0; k < n; ++k) b.emplace_back(stem + std::to_string(k + 1), k);
  if (n == 1) b.emplace_back(stem, 0);
  return b;
}

CompiledExpr::CompiledExpr(const Expr& e, const VarBinding& binding) {
  int depth = 0;
  auto emit = [&](auto&& self, const Expr& n) -> void {
    switch (n->op) {
      case Op::constant:
        code_.push_back({Op::constant, n->value, 0, 0, 0.0});
        max_stack_ = std::max(max_stack_, ++depth);
        return;
      case Op::variable: {
        auto it = std::find_if(binding.begin(), binding.end(), [&](auto& p) { return p.first == n->name; });
        if (it == binding.end()) throw Error(Errc::unknown_identifier, "unbound variable '" + n->name + "'");
        code_.push_back({Op::variable, {}, it->second, 0, 0.0});
        max_stack_ = std::max(max_stack_, ++depth);
        return;
      }
      case Op::add:
      case Op::sub:
      case Op::mul:
      case Op::div:
        self(self, n->a);
        self(self, n->b);
        code_.push_back({n->op, {}, 0, 0, 0.0});
        --depth;
        return;
      default:
        self(self, n->a);
        code_.push_back({n->op, {}, 0, n->exponent, n->cut});
        return;
    }
  };
  emit(emit, e);
}

cplx CompiledExpr::operator()(const cplx* args) const {
  constexpr int kInline = 64;
  cplx inline_stack[kInline];
  std::vector<cplx> heap;
  cplx* st = inline_stack;
  if (max_stack_ > kInline) {
    heap.resize(max_stack_);
    st = heap.data();
  }
  int sp = 0;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::constant: st[sp++] = in.value; break;
      case Op::variable: st[sp++] = args[in.slot]; break;
      case Op::add: --sp; st[sp - 1] += st[sp]; break;
      case Op::sub: --sp; st[sp - 1] -= st[sp]; break;
      case Op::mul: --sp; st[sp - 1] *= st[sp]; break;
      case Op::div: --sp; st[sp - 1] /= st[sp]; break;
      case Op::neg: st[sp - 1] = cplx(0.0) - st[sp - 1]; break;  // 0 - w keeps a +0 imaginary part
      case Op::pow: st[sp - 1] = ipow(st[sp - 1], in.exponent); break;
      case Op::exp: st[sp - 1] = std::exp(st[sp - 1]); break;
      case Op::log: st[sp - 1] = log_with_cut(st[sp - 1], in.cut); break;
      case Op::sqrt: st[sp - 1] = std::sqrt(st[sp - 1]); break;
    }
  }
  return sp ? st[0] : cplx(0.0);
}

cplx evaluate(const Expr& e, const std::vector<std::pair<std::string, cplx>>& env) {
  VarBinding b;
  std::vector<cplx> vals;
  for (std::size_t i = 0; i < env.size(); ++i) {
    b.emplace_back(env[i].first, static_cast<int>(i));
    vals.push_back(env[i].second);
  }
  CompiledExpr c(e, b);
  return c(vals.data());
}

}  // namespace hyperlap

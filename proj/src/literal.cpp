#include "hyperlap/literal.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <optional>

#include "hyperlap/error.hpp"

namespace hyperlap {

using nlohmann::json;

namespace {

// A literal subterm is either a constant or a hyperfunction.
struct Value {
  std::optional<Hyperfunction> u;
  cplx s = 0.0;
  bool zero_literal = false;  // the bare "0", usable as the zero hyperfunction
};

class LiteralParser {
 public:
  explicit LiteralParser(const std::string& text) : t_(text) {}

  Value run() {
    Value v = sum();
    skip();
    if (pos_ != t_.size()) fail("unexpected '" + std::string(1, t_[pos_]) + "'");
    return v;
  }

 private:
  const std::string& t_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < t_.size() && t_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  static Value combine(Value a, Value b, int sign) {
    if (!a.u && !b.u) return {std::nullopt, a.s + double(sign) * b.s, false};
    if (!a.u && a.zero_literal) a.u = zero_hyperfunction(b.u->n);
    if (!b.u && b.zero_literal) b.u = zero_hyperfunction(a.u->n);
    if (!a.u || !b.u) throw Error(Errc::domain_mismatch, "cannot add a constant to a hyperfunction");
    return {add(*a.u, sign > 0 ? *b.u : scale(*b.u, -1.0)), 0.0, false};
  }

  static Value product(Value a, Value b, bool divide) {
    if (divide) {
      if (b.u) throw Error(Errc::domain_mismatch, "cannot divide by a hyperfunction");
      b.s = 1.0 / b.s;
    }
    if (a.u && b.u) throw Error(Errc::domain_mismatch, "products of hyperfunctions are not defined");
    if (!a.u && !b.u) return {std::nullopt, a.s * b.s, false};
    return a.u ? Value{scale(*a.u, b.s), 0.0, false} : Value{scale(*b.u, a.s), 0.0, false};
  }

  Value sum() {
    Value v;
    if (eat('-')) v = product(Value{std::nullopt, -1.0, false}, term(), false);
    else {
      eat('+');
      v = term();
    }
    for (;;) {
      if (eat('+')) v = combine(v, term(), 1);
      else if (eat('-')) v = combine(v, term(), -1);
      else return v;
    }
  }

  Value term() {
    Value v = power();
    for (;;) {
      if (eat('*')) v = product(v, power(), false);
      else if (eat('/')) v = product(v, power(), true);
      else return v;
    }
  }

  Value power() {
    Value v = atom();
    if (eat('^')) {
      Value e = atom();
      if (v.u || e.u) fail("powers apply to constants only");
      v.s = std::pow(v.s, e.s);
      v.zero_literal = false;
    }
    return v;
  }

  double real_arg() {
    Value v = sum();
    if (v.u || v.s.imag() != 0.0) fail("expected a real constant");
    return v.s.real();
  }

  Hyperfunction hf_arg() {
    Value v = sum();
    if (!v.u) {
      if (v.zero_literal) return zero_hyperfunction(1);
      fail("expected a hyperfunction");
    }
    return *v.u;
  }

  Value atom() {
    skip();
    if (pos_ >= t_.size()) fail("unexpected end of literal");
    const char c = t_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = sum();
      expect(')');
      v.zero_literal = false;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = t_.c_str() + pos_;
      char* end = nullptr;
      double x = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<std::size_t>(end - begin);
      return {std::nullopt, x, x == 0.0};
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("unexpected '" + std::string(1, c) + "'");
    const std::size_t start = pos_;
    while (pos_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_')) ++pos_;
    const std::string name = t_.substr(start, pos_ - start);
    if (name == "delta") {
      expect('(');
      Vector a{real_arg()};
      if (eat(',')) a.push_back(real_arg());
      expect(')');
      return {delta(a), 0.0, false};
    }
    if (name == "heaviside_exp" || name == "Y") {
      expect('(');
      cplx cc = 0.0;
      double a = 0.0;
      if (name == "Y") {
        a = real_arg();
      } else {
        Value cv = sum();
        if (cv.u) fail("expected a constant");
        cc = cv.s;
        expect(',');
        a = real_arg();
      }
      expect(')');
      return {heaviside_exp(cc, a), 0.0, false};
    }
    if (name == "d") {
      expect('(');
      Hyperfunction u = hf_arg();
      int k = 1;
      if (eat(',')) k = static_cast<int>(real_arg());
      expect(')');
      if (k < 1 || k > u.n) fail("derivative index out of range");
      return {derivative(u, k - 1), 0.0, false};
    }
    if (name == "tensor") {
      expect('(');
      Hyperfunction u = hf_arg();
      expect(',');
      Hyperfunction v = hf_arg();
      expect(')');
      return {tensor(u, v), 0.0, false};
    }
    // anything else is a constant sub-expression for the expression parser
    std::size_t end = pos_;
    skip();
    if (pos_ < t_.size() && t_[pos_] == '(') {
      int depth = 0;
      for (; pos_ < t_.size(); ++pos_) {
        if (t_[pos_] == '(') ++depth;
        if (t_[pos_] == ')' && --depth == 0) break;
      }
      if (depth != 0) fail("unbalanced parentheses");
      end = ++pos_;
    } else {
      pos_ = end;
    }
    Expr e = parse(t_.substr(start, end - start));
    if (!is_constant(e)) throw SyntaxError(start, "'" + name + "' is not a constant or a builtin");
    return {std::nullopt, evaluate(e, {}), false};
  }
};

Vector vec(const json& j) {
  if (!j.is_array()) throw Error(Errc::config_error, "expected an array of numbers");
  Vector v;
  for (auto& x : j) {
    if (x.is_number()) v.push_back(x.get<double>());
    else if (x.is_string()) {
      ExtReal e = ExtReal::parse(x.get<std::string>());
      if (!e.is_finite()) throw Error(Errc::config_error, "vertex coordinates must be finite");
      v.push_back(e.value);
    } else {
      throw Error(Errc::config_error, "expected a number");
    }
  }
  return v;
}

}  // namespace

Hyperfunction parse_literal(const std::string& text) {
  Value v = LiteralParser(text).run();
  if (v.u) return *v.u;
  if (v.zero_literal || v.s == 0.0) return zero_hyperfunction(1);
  throw Error(Errc::domain_mismatch, "literal '" + text + "' is a nonzero constant, not a hyperfunction");
}

cplx parse_scalar(const std::string& text) {
  Expr e = parse(text);
  if (!is_constant(e)) throw Error(Errc::config_error, "'" + text + "' is not a constant");
  return evaluate(e, {});
}

json cplx_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

json cone_to_json(const ClosedConicSet& k) {
  json g = json::array();
  for (auto& v : k.cone.generators()) g.push_back(v);
  return {{"vertex", k.vertex}, {"generators", g}};
}

ClosedConicSet cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertex")) throw Error(Errc::config_error, "cone needs a vertex");
  Vector vertex = vec(j.at("vertex"));
  std::vector<Vector> gens;
  if (j.contains("generators"))
    for (auto& g : j.at("generators")) gens.push_back(vec(g));
  if (vertex.empty()) throw Error(Errc::config_error, "empty cone vertex");
  return {vertex, PolyhedralCone(vertex.size(), gens)};
}

ClosedConicSet parse_cone(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (!s.empty() && s.front() == '{' && s.find('"') != std::string::npos) return cone_from_json(json::parse(s));
  auto number = [&](const std::string& x) {
    ExtReal e = ExtReal::parse(x);
    if (!e.is_finite()) throw Error(Errc::config_error, "bad cone endpoint '" + x + "'");
    return e.value;
  };
  const auto comma = s.find(',');
  if (s.size() > 2 && s.front() == '{' && s.back() == '}') return point_set({number(s.substr(1, s.size() - 2))});
  if (s.rfind("orthant(", 0) == 0 && s.back() == ')' && comma != std::string::npos)
    return shifted_orthant({number(s.substr(8, comma - 8)), number(s.substr(comma + 1, s.size() - comma - 2))});
  if (s.size() > 2 && comma != std::string::npos) {
    const std::string lo = s.substr(1, comma - 1), hi = s.substr(comma + 1, s.size() - comma - 2);
    if (s.front() == '[' && (hi == "inf" || hi == "+inf")) return half_line(number(lo), 1);
    if (s.back() == ']' && lo == "-inf") return half_line(number(hi), -1);
    if (s.front() == '(' && lo == "-inf" && (hi == "inf" || hi == "+inf")) return whole_space(1);
  }
  throw Error(Errc::config_error, "cannot read cone '" + text + "'");
}

json literal_to_json(const Hyperfunction& u) {
  json terms = json::array();
  for (auto& t : u.terms) {
    json e = {{"alpha", t.F.domain.signs()}, {"coeff", cplx_to_json(t.coeff)}, {"H", t.F.growth.H}};
    if (auto ex = t.F.f->expression()) {
      e["expr"] = print(*ex);
    } else {
      e["expr"] = t.F.f->describe();
      e["numeric"] = true;
    }
    terms.push_back(e);
  }
  return {{"n", u.n}, {"terms", terms}, {"support", cone_to_json(u.support)}};
}

Hyperfunction literal_from_json(const json& j) {
  if (j.is_string()) return parse_literal(j.get<std::string>());
  if (!j.is_object() || !j.contains("terms")) throw Error(Errc::config_error, "hyperfunction literal needs terms");
  const ClosedConicSet support = j.contains("support") ? cone_from_json(j.at("support")) : ClosedConicSet{};
  int n = j.value("n", support.vertex.empty() ? 0 : static_cast<int>(support.vertex.size()));
  std::optional<Hyperfunction> u;
  for (auto& t : j.at("terms")) {
    if (t.value("numeric", false)) throw Error(Errc::config_error, "numeric terms cannot be read back");
    WedgeDescriptor w = WedgeDescriptor::parse_signs(t.at("alpha").get<std::string>());
    if (n == 0) n = w.n;
    if (w.n != n) throw Error(Errc::config_error, "term dimension does not match the literal");
    AnalyticFunction F{expr_function(t.at("expr").get<std::string>(), n), w, {}};
    F.growth.H = t.value("H", 0.0);
    cplx coeff = 1.0;
    if (t.contains("coeff")) {
      auto& c = t.at("coeff");
      coeff = c.is_array() ? cplx(c.at(0).get<double>(), c.at(1).get<double>()) : cplx(c.get<double>());
    }
    Hyperfunction term = boundary_value(F, w.alpha, coeff, support.vertex.empty() ? whole_space(n) : support);
    u = u ? add(*u, term) : term;
  }
  if (!u) return zero_hyperfunction(n == 0 ? 1 : n);
  if (!support.vertex.empty()) u->support = support;
  return *u;
}

}  // namespace hyperlap

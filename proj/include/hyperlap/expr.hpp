#pragma once

#include <complex>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace hyperlap {

using cplx = std::complex<double>;

enum class Op { constant, variable, add, sub, mul, div, neg, pow, exp, log, sqrt };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op;
  cplx value{};        // constant
  std::string name;    // variable
  int exponent = 0;    // pow
  double cut = 0.0;    // log: branch cut along e^{i cut}[0, inf)
  Expr a, b;
};

namespace ex {
Expr constant(cplx v);
Expr var(const std::string& name);
Expr add(Expr a, Expr b);
Expr sub(Expr a, Expr b);
Expr mul(Expr a, Expr b);
Expr div(Expr a, Expr b);
Expr neg(Expr a);
Expr pow(Expr a, int n);
Expr exp(Expr a);
Expr log(Expr a, double cut);
Expr sqrt(Expr a);
}  // namespace ex

// Principal branch: cut along the negative reals.
inline constexpr double kPrincipalCut = 3.14159265358979323846;

Expr parse(const std::string& text);
std::string print(const Expr& e);
bool structurally_equal(const Expr& a, const Expr& b);
Expr diff(const Expr& e, const std::string& var);
std::vector<std::string> free_variables(const Expr& e);
bool is_constant(const Expr& e);

cplx log_with_cut(cplx w, double cut);

// Slot binding for compiled evaluation: every listed name reads the slot value.
using VarBinding = std::vector<std::pair<std::string, int>>;

// Names z1..zn (and z when n = 1) bound to slots 0..n-1.
VarBinding bind_indexed(const std::string& stem, int n);

// Flat stack program; evaluation is allocation-free and reentrant.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, const VarBinding& binding);
  cplx operator()(const cplx* args) const;
  cplx operator()(cplx z) const { return (*this)(&z); }
  bool empty() const { return code_.empty(); }

 private:
  struct Instr {
    Op op;
    cplx value;
    int slot;
    int exponent;
    double cut;
  };
  std::vector<Instr> code_;
  int max_stack_ = 0;
};

// Convenience evaluation with named bindings.
cplx evaluate(const Expr& e, const std::vector<std::pair<std::string, cplx>>& env);

}  // namespace hyperlap

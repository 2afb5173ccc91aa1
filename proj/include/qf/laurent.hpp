#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qf/arith.hpp"

namespace qf {

using Exponent = std::vector<int>;

class Laurent {
 public:
  Laurent() = default;
  explicit Laurent(int n) : n_(n) {}
  static Laurent constant(int n, const Int& c);
  static Laurent monomial(const Exponent& e, const Int& c = 1);
  static Laurent variable(int n, int i);

  int n() const { return n_; }
  const std::map<Exponent, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Int coeff(const Exponent& e) const;
  Int constant_term() const { return coeff(Exponent(n_, 0)); }

  void add_term(const Exponent& e, const Int& c);

  Laurent operator+(const Laurent& o) const;
  Laurent operator-(const Laurent& o) const;
  Laurent operator-() const;
  Laurent operator*(const Laurent& o) const;
  Laurent operator*(const Int& c) const;
  Laurent& operator+=(const Laurent& o);
  bool operator==(const Laurent& o) const { return n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  Laurent pow(unsigned k) const;
  // Exact division; throws NotDivisible if no Laurent quotient exists.
  Laurent divide_exact(const Laurent& d) const;
  // Substitute x_i -> g_i (each g_i a Laurent polynomial in m variables);
  // negative powers require g_i to be a monomial.
  Laurent substitute(const std::vector<Laurent>& g) const;

  Exponent min_exponent() const;
  Exponent max_exponent() const;

 private:
  int n_ = 0;
  std::map<Exponent, Int> terms_;
  void check(const Laurent& o) const;
};

using PeriodSequence = std::vector<Int>;

// Constant terms of f^0..f^n by iterated multiplication, dropping exponents
// that can no longer return to the origin in the remaining steps.
PeriodSequence classical_period(const Laurent& f, unsigned n);
PeriodSequence classical_period_parallel(const Laurent& f, unsigned n);

Laurent gl_equivalence(const Laurent& f, const IntMat& a);
// f = sum_i C_i x_p^i  ->  sum_i h^i C_i x_p^i ; h must not involve x_p.
Laurent mutate(const Laurent& f, const Laurent& h, int pivot);

std::vector<std::string> default_names(int n);
Laurent parse_laurent(const std::string& text, const std::vector<std::string>& names);
Laurent parse_laurent(const std::string& text);  // names inferred, x y z w order first
std::string to_string(const Laurent& f, const std::vector<std::string>& names);
std::string to_string(const Laurent& f);

nlohmann::json laurent_to_json(const Laurent& f);
Laurent laurent_from_json(const nlohmann::json& j);

}  // namespace qf

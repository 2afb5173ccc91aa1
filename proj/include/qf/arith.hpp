#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qf {

using Int = mpz_class;
using Rat = mpq_class;

using IntVec = std::vector<long>;
using IntMat = std::vector<IntVec>;  // row-major
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

// Every failure surfaced to callers carries one of the error names from the
// interface contract (NotAcyclic, NotLaurent, ...).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

Int factorial(unsigned n);
Int binomial(long n, long k);

IntMat transpose(const IntMat& a);
RatMat to_rat(const IntMat& a);

long rank(const IntMat& a);
long rank(RatMat a);
Int det(const IntMat& a);  // square, Bareiss

// Solve a x = b over Q. Empty optional-like result: returns false if no solution.
bool solve(const RatMat& a, const RatVec& b, RatVec& x);
// Inverse of a square integer matrix with det +-1.
IntMat unimodular_inverse(const IntMat& a);

struct LPResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  Rat value;
  RatVec x;
};

// maximize c.x  s.t.  A x = b, x >= 0.  Exact two-phase simplex, Bland's rule.
LPResult simplex_max(const RatMat& a, const RatVec& b, const RatVec& c);

// Is w a nonnegative combination of the given generators (each of length r)?
bool in_cone(const std::vector<IntVec>& gens, const IntVec& w);
// Is w in the interior of the (full-dimensional) cone spanned by gens?
bool in_cone_interior(const std::vector<IntVec>& gens, const IntVec& w);

// Bounds of coordinate k over {beta : D_a.beta >= 0 for all a, d.beta <= n}.
// Returns false if unbounded.
bool coordinate_range(const std::vector<IntVec>& cols, const IntVec& d, long n,
                      std::size_t k, Rat& lo, Rat& hi);

long floor_rat(const Rat& q);
long ceil_rat(const Rat& q);

}  // namespace qf

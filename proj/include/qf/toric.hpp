#pragma once

#include "qf/ladder.hpp"

namespace qf {

struct ToricGitData {
  long rank = 0;
  std::vector<IntVec> weights;  // one column per arrow, length rank
  IntVec stability;
  std::vector<std::string> arrow_labels;
};

using DivisorClass = IntVec;
using ArrowSet = std::vector<long>;  // sorted arrow indices

struct Meander {
  std::map<long, LadderPath> paths;  // quiver vertex -> path
  ArrowSet support;
};

struct CartierCertificate {
  long vertex = 0;              // quiver vertex i of D_i
  std::size_t meander = 0;      // index into the meander list
  std::vector<int> delta;       // value on each arrow basis vector
  bool conserved = true;
  bool matches_divisor = true;  // delta = -coefficient of Pi_i off the cone
};

ToricGitData git_data(const LadderQuiver& lq);
DivisorClass divisor_of_path(const ToricGitData& gd, const LadderPath& p);
DivisorClass arrows_class(const ToricGitData& gd, const ArrowSet& s);
// D_i: the class of the section paths of vertex i
std::map<long, DivisorClass> vertex_divisors(const ToricGitData& gd, const LadderQuiver& lq);
DivisorClass anticanonical(const ToricGitData& gd, const LadderQuiver& lq, const Quiver& q);

std::vector<Meander> meanders(const LadderQuiver& lq);

// Inclusion-minimal arrow sets S with w in Cone(D_a : a in S).
std::vector<ArrowSet> minimal_anticones_bruteforce(const ToricGitData& gd, const LadderQuiver& lq);
std::vector<ArrowSet> minimal_anticones_parallel(const ToricGitData& gd, const LadderQuiver& lq);
// Generic oracle with no flow structure assumed: LP membership on every subset up to the rank.
std::vector<ArrowSet> minimal_anticones_lp(const ToricGitData& gd);

std::vector<CartierCertificate> cartier_certificate(const ToricGitData& gd, const LadderQuiver& lq,
                                                    const std::vector<Meander>& ms,
                                                    const std::map<long, LadderPath>& pi);
bool gorenstein_check(const ToricGitData& gd, const LadderQuiver& lq, const Quiver& q);

nlohmann::json git_to_json(const ToricGitData& gd, const LadderQuiver& lq);

}  // namespace qf

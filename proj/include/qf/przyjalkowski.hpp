#pragma once

#include <optional>

#include "qf/laurent.hpp"
#include "qf/toric.hpp"

namespace qf {

struct MirrorProblem {
  long rank = 0;
  std::vector<IntVec> d;  // weight columns D_1..D_m
  IntVec w;               // stability
  std::vector<IntVec> l;  // bundle columns L_1..L_k
  std::vector<std::string> labels;
};

struct ConvexPartition {
  std::vector<long> b0, b1;            // sorted column indices
  std::vector<std::vector<long>> s;    // s[0] = S_0, s[i] = S_i
  std::vector<long> j;                 // j[i] distinguished in S_i; j[0] unused
};

// One summand of a bundle specification.
//   Det:   O(sum_i a_i D_i), one column.
//   Split: W_vertex cut into r_vertex pieces along a section path; with
//          wedge > 0 the columns are the sums over wedge-subsets of pieces.
//          `twist` adds sum_i a_i D_i to every column (tensor with rank-one W_i).
struct BundleSummand {
  enum Kind { Det, Split } kind = Det;
  std::map<long, long> powers;        // Det
  long vertex = 0;                    // Split
  std::vector<std::vector<Point>> pieces;  // explicit cut, empty for auto
  long wedge = 1;
  std::map<long, long> twist;
};
using BundleSpec = std::vector<BundleSummand>;

BundleSpec bundle_from_json(const nlohmann::json& j);
nlohmann::json bundle_to_json(const BundleSpec& spec);

// Columns L_i for the spec on the ladder degeneration.
std::vector<IntVec> bundle_to_divisors(const Quiver& q, const LadderDiagram& ld, const LadderQuiver& lq,
                                       const ToricGitData& gd, const BundleSpec& spec);

MirrorProblem mirror_problem(const ToricGitData& gd, const std::vector<IntVec>& l);

// Replays every condition of the definition; returns an empty string if sound.
std::string check_partition(const MirrorProblem& mp, const ConvexPartition& cp);
// Preferred basis from the ladder: arrows of the longest section paths (B_0),
// completed by arrows into the remaining vertices (B_1).
struct PartitionSeed {
  std::vector<long> b0, b1;
};
PartitionSeed ladder_seed(const LadderQuiver& lq, const ToricGitData& gd);

// The seeded basis is tried first, then every basis in lexicographic order.
ConvexPartition find_convex_partition(const MirrorProblem& mp, const PartitionSeed* seed = nullptr);
// Up to `limit` partitions, at most one per basis, in search order.
std::vector<ConvexPartition> convex_partitions(const MirrorProblem& mp, std::size_t limit,
                                               const PartitionSeed* seed = nullptr);

Laurent przyjalkowski(const MirrorProblem& mp, const ConvexPartition& cp);

// sum over beta of t^d d! prod (L.beta)! / prod (D.beta)!, d = (w - sum L).beta
PeriodSequence toric_ci_period(const MirrorProblem& mp, unsigned n);
PeriodSequence toric_ci_period_parallel(const MirrorProblem& mp, unsigned n);

// Whole chain from a quiver and bundle: ladder, GIT data, bundle columns, the
// seeded partition and the Laurent polynomial. Without a partition the last
// two stay empty (or NotFound is thrown when `require` is set).
struct MirrorRun {
  LadderDiagram ld;
  LadderQuiver lq;
  ToricGitData gd;
  MirrorProblem mp;
  std::optional<ConvexPartition> partition;
  Laurent polynomial;
};
MirrorRun mirror_pipeline(const Quiver& q, const BundleSpec& spec, bool require = true);

nlohmann::json partition_to_json(const ConvexPartition& cp);
nlohmann::json problem_to_json(const MirrorProblem& mp);

}  // namespace qf

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "modflow/catalog.hpp"
#include "modflow/multigraph.hpp"
#include "modflow/orient.hpp"

namespace modflow {

enum class WeightKind { kW, kRho };

enum class PartitionClass { kTrivial, kAlmostTrivial, kNormal, kWhole };

std::string to_string(PartitionClass c);

/// Set partition of {0..n-1}, stored as a restricted-growth string: block
/// ids appear in order of first occurrence.
class Partition {
 public:
  Partition() = default;
  /// Any block labelling; it is renumbered into restricted-growth form.
  explicit Partition(const std::vector<int>& block_of);
  static Partition from_blocks(int n, const std::vector<std::vector<Vertex>>& blocks);
  static Partition trivial(int n);
  static Partition whole(int n);

  int size() const { return static_cast<int>(rgs_.size()); }
  int block_count() const { return blocks_; }
  int block_of(Vertex v) const { return rgs_.at(v); }
  const std::vector<int>& rgs() const { return rgs_; }
  std::vector<std::vector<Vertex>> blocks() const;
  PartitionClass classify() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<int> rgs_;
  int blocks_ = 0;
};

/// Visits every partition of {0..n-1} with between min_blocks and
/// max_blocks blocks, in lexicographic order of restricted-growth strings.
/// The visitor returns false to stop.
void for_each_partition(int n, int min_blocks, int max_blocks,
                        const std::function<bool(const std::vector<int>&)>& visit);

/// G/P: one vertex per block.
Multigraph quotient(const Multigraph& g, const Partition& p);

/// sum d(P_i) - 11t + 19 (kW) or sum d(P_i) - 17t + 31 (kRho).
int weight(const Multigraph& g, const Partition& p, WeightKind kind);

struct WeightReport {
  Partition partition;
  int w = 0;
  int rho = 0;
};
WeightReport weight_report(const Multigraph& g, const Partition& p);

struct PartitionLimits {
  int max_vertices = 12;
};

struct MinWeight {
  int value = 0;
  Partition argmin;
  /// Number of partitions attaining the minimum.
  long long ties = 0;
};

/// Exhaustive minimum; ties go to the lexicographically least partition.
std::variant<MinWeight, Refusal> min_weight(const Multigraph& g, WeightKind kind,
                                            PartitionLimits limits = {});

/// Weight of the partition obtained by replacing block i of P by the blocks
/// of Q (a partition of G[P_i], vertices in increasing order). Throws
/// std::logic_error if the refinement identity fails.
int refinement_weight(const Multigraph& g, const Partition& p, int block, const Partition& q,
                      WeightKind kind);

enum class SpecialMode { kTroublesome, kProblematic };

struct SpecialPartition {
  Partition partition;
  CatalogLabel label;
};

/// Membership of a (contracted) graph in the troublesome or problematic family.
std::optional<CatalogLabel> special_label(const Multigraph& g, SpecialMode mode);
/// Every member of the family, as catalog labels.
std::vector<CatalogLabel> special_family(SpecialMode mode);

/// First partition with 2 or 3 blocks whose quotient is in the family.
std::variant<std::optional<SpecialPartition>, Refusal> find_special_partition(
    const Multigraph& g, SpecialMode mode, PartitionLimits limits = {});

}  // namespace modflow

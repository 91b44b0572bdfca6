#pragma once

#include <memory>
#include <vector>

#include "sebot/encoding_tree.hpp"

namespace sebot {

/// Decreases smaller than this are treated as zero so floating noise never
/// counts as an improvement.
inline constexpr double kMinEntropyGain = 1e-12;

enum class OpKind { Stretch, Compress };

struct AppliedOp {
  OpKind kind;
  NodeId target;  // node the operator ran on (pre-compaction id)
  double delta;   // entropy decrease of this single merge/deletion
};

/// Optional sink recording every accepted merge (stretch) and deletion
/// (compress). When `verify` is set, each step is cross-checked against a
/// full tree_entropy recomputation and InvariantError is thrown on mismatch.
struct OpAudit {
  std::vector<AppliedOp> ops;
  bool verify = false;
  double verify_tol = 1e-9;
};

/// Greedy agglomeration of `id`'s children into one new layer: repeatedly
/// merge the adjacent pair with the largest entropy decrease while that
/// decrease is positive. Returns the total decrease (0 leaves t unchanged).
double stretch(EncodingTree& t, NodeId id, OpAudit* audit = nullptr);

/// Repeatedly dissolves the interior child of `id` whose removal decreases
/// entropy the most, while some removal decreases it. Returns the total.
double compress(EncodingTree& t, NodeId id, OpAudit* audit = nullptr);

/// Mean over interior nodes at `layer` of the stretch+compress reduction,
/// each evaluated on a scratch copy. The tree is unchanged. Nodes are scored
/// in parallel and reduced in ascending id order, so the result does not
/// depend on the thread count. Throws std::domain_error if layer is outside
/// [0, height].
double avg_reduction(const EncodingTree& t, int layer);

/// Single-threaded reference for avg_reduction: whole-tree scratch copies,
/// nodes visited in ascending id order.
double avg_reduction_serial(const EncodingTree& t, int layer);

struct OptimizeOptions {
  int max_height = 3;       // K
  bool parallel = true;     // avg_reduction vs avg_reduction_serial
  std::size_t max_rounds = 0;  // 0: 4 * vertex count + 16
};

struct OptimizeResult {
  EncodingTree tree;
  bool degenerate = false;  // vol(G) == 0; tree is the one-layer tree
  std::size_t rounds = 0;
  double initial_entropy = 0.0;
  double final_entropy = 0.0;
};

/// Greedy height-bounded entropy minimization starting from the one-layer
/// tree. Throws std::invalid_argument for max_height < 2.
OptimizeResult optimize(std::shared_ptr<const WeightedGraph> g, const OptimizeOptions& opts,
                        OpAudit* audit = nullptr);

}  // namespace sebot

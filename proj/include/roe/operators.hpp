#pragma once

#include <optional>
#include <string>

#include "roe/metric_order.hpp"
#include "roe/sparse_op.hpp"

namespace roe {

/// Largest distance under d across the support of T; 0 when the support is
/// empty or diagonal, inf when an entry sits on an inf-distant pair.
double propagation(const SparseOp& T, const ExtMetric& d);

/// Maximum number of stored entries in any row or column.
std::size_t band_sparsity(const SparseOp& T);

/// The unit-length support-graph metric: x and y are adjacent when T has an
/// entry at (x,y) or (y,x), distances are hop counts. T gets propagation 1
/// (or 0) under the result, and the result certifies against the base with
/// C <= S. Throws std::invalid_argument when propagation(T, base) > S.
ExtMetric support_metric(const SparseOp& T, const ExtMetric& base, double S,
                         kernels::Exec exec = kernels::default_exec());

/// Two-way certificate: minimal band count k, minimal propagation S, and the
/// support metric together with its membership certificate.
struct MembershipCert {
  std::size_t k = 0;
  double S = 0.0;
  ExtMetric d;
  MetricCert cert;
};

struct CertifyResult {
  std::optional<MembershipCert> cert;
  /// Set when T has an entry on a pair at base distance inf, which rules out
  /// every finite propagation class.
  std::optional<std::pair<std::size_t, std::size_t>> infinite_pair;

  bool ok() const { return cert.has_value(); }
};

CertifyResult certify_membership(const SparseOp& T, const ExtMetric& base,
                                 kernels::Exec exec = kernels::default_exec());

/// One diagonal-times-partial-permutation term: entry f(x) at (x, y) for each
/// assignment v(y) = x. Both maps are sorted by index.
struct DecompositionTerm {
  std::vector<std::pair<std::size_t, std::complex<double>>> f;  // row -> value
  std::vector<std::pair<std::size_t, std::size_t>> v;           // col -> row, injective
};

struct Decomposition {
  std::vector<DecompositionTerm> terms;
};

/// Splits T into exactly band_sparsity(T) diagonal-times-partial-permutation
/// terms by edge coloring of the bipartite support graph: the graph is padded
/// to a regular multigraph and peeled by repeated perfect matchings, so every
/// color class is a matching covering all maximum-degree vertices. Entries are
/// copied, never recomputed, so the terms sum back to T exactly.
Decomposition decompose_banded(const SparseOp& T);

SparseOp term_matrix(const PointSet& points, const DecompositionTerm& term);
SparseOp decomposition_sum(const PointSet& points, const Decomposition& dec);

struct NormResult {
  double value = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
};

/// Largest singular value by power iteration on T*T from the normalized
/// all-ones start (restarting from basis vectors if the start lands in the
/// kernel). Exact for diagonal-times-partial-permutation inputs.
NormResult op_norm(const SparseOp& T, double tol = 1e-10, std::size_t max_iterations = 10000,
                   kernels::Exec exec = kernels::default_exec());

/// A finite group acting on disjoint blocks of the point set by permutations,
/// identity elsewhere. The multiplication table is validated as a group and
/// each block action as a homomorphism at construction.
class BlockRep {
 public:
  struct Block {
    std::vector<std::size_t> block;             // ascending point indices
    std::vector<std::vector<std::size_t>> perms;  // perms[g][i] = image position of i
  };

  /// table[g][h] is the index of g*h. Throws std::invalid_argument on
  /// anything that is not a group with permutation homomorphism actions.
  BlockRep(PointSet points, std::vector<std::string> elements,
           std::vector<std::vector<std::size_t>> table, std::vector<Block> blocks);

  const PointSet& points() const { return points_; }
  const std::vector<std::string>& elements() const { return elements_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t identity() const { return identity_; }
  std::size_t element_index(std::string_view name) const;
  std::size_t compose(std::size_t g, std::size_t h) const { return table_[g][h]; }

 private:
  PointSet points_;
  std::vector<std::string> elements_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<Block> blocks_;
  std::size_t identity_ = 0;
};

/// The 0/1 operator permuting each block by the element's action and fixing
/// every other point; a unitary with band sparsity 1.
SparseOp block_embedding(const BlockRep& rep, std::size_t g);
SparseOp block_embedding(const BlockRep& rep, std::string_view g);

}  // namespace roe

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ncorr::comb {

using cplx = std::complex<double>;

enum class Side : std::uint8_t { Alpha, Beta };

struct Shift {
  int label = 0;
  cplx value{};
  Side side = Side::Alpha;
};

using ShiftSet = std::vector<Shift>;

// Labels are assigned label_base, label_base + 1, ... in input order.
ShiftSet make_shifts(std::span<const cplx> values, Side side, int label_base = 0);
std::vector<cplx> values_of(const ShiftSet& s);

// (S, T) with S subset of A, T subset of B, |S| = |T|; complements kept alongside.
struct SubsetPair {
  ShiftSet S, T, Sbar, Tbar;
};

// Ordered by |S|, then lexicographically by the labels of S and then T.
// Sizes above kMaxSubsetSide throw Error{TooLarge}.
inline constexpr int kMaxSubsetSide = 8;
std::vector<SubsetPair> enumerate_subset_pairs(const ShiftSet& A, const ShiftSet& B);

// A partition given as a list of block bitmasks over positions 0..m-1.
using MaskPartition = std::vector<std::uint32_t>;

// Every set partition of {0..m-1}, in restricted-growth-string order.
inline constexpr int kMaxPartitionSize = 8;
std::vector<MaskPartition> set_partition_masks(int m);

// Partitions of {0..a-1} (alpha side) + {a..a+b-1} (beta side) into singletons
// and alpha-beta pairs only.
std::vector<MaskPartition> admissible_partition_masks(int a, int b);

using Block = ShiftSet;
using Partition = std::vector<Block>;

std::vector<Partition> enumerate_set_partitions(const ShiftSet& W);
std::vector<Partition> enumerate_admissible_partitions(const ShiftSet& Sbar, const ShiftSet& Tbar);

// Ordered decompositions of {0..n-1} into (K, L, M).
struct Tripartition {
  std::vector<int> K, L, M;
};
inline constexpr int kMaxTripartitionSize = 6;
std::vector<Tripartition> enumerate_tripartitions(int n);

// Number of set partitions (Bell numbers) for small m.
std::uint64_t bell_number(int m);

}  // namespace ncorr::comb

#include "ncorr/combinat.hpp"

#include <algorithm>
#include <string>

#include "ncorr/error.hpp"

namespace ncorr::comb {

ShiftSet make_shifts(std::span<const cplx> values, Side side, int label_base) {
  ShiftSet out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.push_back({label_base + static_cast<int>(i), values[i], side});
  return out;
}

std::vector<cplx> values_of(const ShiftSet& s) {
  std::vector<cplx> v;
  v.reserve(s.size());
  for (const auto& x : s) v.push_back(x.value);
  return v;
}

namespace {

// k-subsets of {0..n-1} as index lists, lexicographic.
std::vector<std::vector<int>> combinations(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return out;
  for (;;) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

ShiftSet sorted_by_label(ShiftSet s) {
  std::sort(s.begin(), s.end(), [](const Shift& a, const Shift& b) { return a.label < b.label; });
  return s;
}

void split(const ShiftSet& X, const std::vector<int>& pick, ShiftSet& in, ShiftSet& out) {
  std::vector<bool> chosen(X.size(), false);
  for (int i : pick) chosen[i] = true;
  for (std::size_t i = 0; i < X.size(); ++i) (chosen[i] ? in : out).push_back(X[i]);
}

}  // namespace

std::vector<SubsetPair> enumerate_subset_pairs(const ShiftSet& A0, const ShiftSet& B0) {
  if (static_cast<int>(A0.size()) > kMaxSubsetSide || static_cast<int>(B0.size()) > kMaxSubsetSide)
    throw Error(Errc::TooLarge, "shift set too large for subset enumeration");
  const ShiftSet A = sorted_by_label(A0), B = sorted_by_label(B0);
  const int a = static_cast<int>(A.size()), b = static_cast<int>(B.size());
  std::vector<SubsetPair> out;
  for (int k = 0; k <= std::min(a, b); ++k) {
    const auto ca = combinations(a, k);
    const auto cb = combinations(b, k);
    for (const auto& sa : ca) {
      for (const auto& sb : cb) {
        SubsetPair p;
        split(A, sa, p.S, p.Sbar);
        split(B, sb, p.T, p.Tbar);
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::uint64_t bell_number(int m) {
  // Bell triangle
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < m; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (auto v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::vector<MaskPartition> set_partition_masks(int m) {
  if (m > kMaxPartitionSize) throw Error(Errc::TooLarge, "set partition enumeration limited to 8 elements");
  std::vector<MaskPartition> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  // Restricted growth strings a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(m, 0);
  for (;;) {
    const int blocks = *std::max_element(a.begin(), a.end()) + 1;
    MaskPartition p(blocks, 0u);
    for (int i = 0; i < m; ++i) p[a[i]] |= (1u << i);
    out.push_back(std::move(p));
    int i = m - 1;
    for (; i > 0; --i) {
      const int mx = *std::max_element(a.begin(), a.begin() + i);
      if (a[i] <= mx) break;
    }
    if (i == 0) break;
    ++a[i];
    for (int j = i + 1; j < m; ++j) a[j] = 0;
  }
  return out;
}

std::vector<MaskPartition> admissible_partition_masks(int a, int b) {
  if (a + b > 2 * kMaxSubsetSide) throw Error(Errc::TooLarge, "admissible partition enumeration too large");
  std::vector<MaskPartition> out;
  // Match alpha positions in order: each alpha is either a singleton or paired
  // with an unused beta.
  MaskPartition cur;
  std::vector<bool> used(b, false);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == a) {
      MaskPartition p = cur;
      for (int j = 0; j < b; ++j)
        if (!used[j]) p.push_back(1u << (a + j));
      out.push_back(std::move(p));
      return;
    }
    cur.push_back(1u << i);
    self(self, i + 1);
    cur.pop_back();
    for (int j = 0; j < b; ++j) {
      if (used[j]) continue;
      used[j] = true;
      cur.push_back((1u << i) | (1u << (a + j)));
      self(self, i + 1);
      cur.pop_back();
      used[j] = false;
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

std::vector<Partition> to_partitions(const ShiftSet& W, const std::vector<MaskPartition>& masks) {
  std::vector<Partition> out;
  out.reserve(masks.size());
  for (const auto& mp : masks) {
    Partition p;
    for (auto m : mp) {
      Block blk;
      for (std::size_t i = 0; i < W.size(); ++i)
        if (m & (1u << i)) blk.push_back(W[i]);
      p.push_back(std::move(blk));
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::vector<Partition> enumerate_set_partitions(const ShiftSet& W) {
  return to_partitions(W, set_partition_masks(static_cast<int>(W.size())));
}

std::vector<Partition> enumerate_admissible_partitions(const ShiftSet& Sbar, const ShiftSet& Tbar) {
  ShiftSet W = Sbar;
  W.insert(W.end(), Tbar.begin(), Tbar.end());
  return to_partitions(W, admissible_partition_masks(static_cast<int>(Sbar.size()), static_cast<int>(Tbar.size())));
}

std::vector<Tripartition> enumerate_tripartitions(int n) {
  if (n > kMaxTripartitionSize) throw Error(Errc::TooLarge, "tripartitions limited to n <= 6");
  std::vector<Tripartition> out;
  int total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  out.reserve(total);
  for (int code = 0; code < total; ++code) {
    Tripartition t;
    int c = code;
    for (int i = 0; i < n; ++i, c /= 3) {
      switch (c % 3) {
        case 0: t.K.push_back(i); break;
        case 1: t.L.push_back(i); break;
        default: t.M.push_back(i); break;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace ncorr::comb

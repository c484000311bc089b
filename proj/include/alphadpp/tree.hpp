#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "alphadpp/rng.hpp"
#include "alphadpp/types.hpp"

namespace alphadpp {

// Half-open interval [lo, hi).
struct Interval {
  Real lo = 0;
  Real hi = 0;
  Real length() const { return hi - lo; }
  Real mid() const { return 0.5 * (lo + hi); }
  bool contains(Real x) const { return lo <= x && x < hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool disjoint(const Interval& o) const { return hi <= o.lo || o.hi <= lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// A node of the dyadic refinement tree over the real line: an integer root j1
// and refinement bits j2..jr.  rank() == r == 1 + #bits.  At rank r the index
// names the half-open cell
//   [J, J + 2^{1-r}),   J = j1 + sum_{n=2..r} j_n * 2^{-(n-1)},
// i.e. bit j_{n} selects the left (0) or right (1) half at each refinement.
// Text form: "(j1;j2...jr)", e.g. "(0;010)"; rank 1 is "(0;)".
class TreeIndex {
 public:
  TreeIndex() = default;  // rank-1 cell [0, 1)

  static TreeIndex cell(std::int64_t root) { return TreeIndex(root, 0, 0); }
  static TreeIndex make(std::int64_t root, const std::vector<int>& bits);
  // Cell of the given rank containing position x.
  static TreeIndex enclosing(int rank, Real x);
  static TreeIndex parse(const std::string& text);

  int rank() const { return nbits_ + 1; }
  std::int64_t root() const { return root_; }
  int bit(int k) const;            // j_{k+2}, k in [0, rank()-1)
  int last_bit() const;            // j_rank; rank >= 2 required
  std::vector<int> bits() const;

  TreeIndex child(int b) const;    // append one refinement bit
  TreeIndex parent() const;        // drop the last bit; rank >= 2 required
  TreeIndex prefix(int rank) const;
  bool is_prefix_of(const TreeIndex& o) const;

  Real lower() const;              // J
  Real length() const { return std::ldexp(1.0, -nbits_); }
  Interval cell_interval() const { return {lower(), lower() + length()}; }

  std::string str() const;

  // Lexicographic on (root, j2, j3, ...), proper prefixes first; used only to
  // fix a deterministic enumeration order.
  std::strong_ordering operator<=>(const TreeIndex& o) const;
  bool operator==(const TreeIndex& o) const = default;

 private:
  TreeIndex(std::int64_t root, std::uint64_t bits, int nbits)
      : root_(root), bits_(bits), nbits_(nbits) {}

  std::int64_t root_ = 0;
  std::uint64_t bits_ = 0;  // bit k of bits_ stores j_{k+2}
  int nbits_ = 0;
};

// Observation window: a half-open interval whose endpoints sit on the dyadic
// grid of every level it is used with.
struct Window {
  Real a = 0;
  Real b = 1;
  Real length() const { return b - a; }
  Interval interval() const { return {a, b}; }
  bool aligned(int level) const;
  std::int64_t cell_count(int level) const;  // requires aligned(level)
  // The level-`level` cells partitioning the window, in position order.
  std::vector<TreeIndex> cells(int level) const;
};

// Basis label of the level-l system: the pair (level, unshifted tree index u)
// with u.rank() >= level; the level-l rank is u.rank() - level + 1.  Rank-1
// labels are the level-l cells themselves.  Labels belonging to the
// orthonormal family additionally satisfy rank()==1 or u.last_bit()==0
// (in_family()); regroupings of arbitrary tree indices are representable so
// the shift map below can round-trip.
class BasisIndex {
 public:
  BasisIndex() = default;
  BasisIndex(int level, TreeIndex unshifted);

  int level() const { return level_; }
  const TreeIndex& unshifted() const { return u_; }
  int rank() const { return u_.rank() - level_ + 1; }
  TreeIndex root_block() const { return u_.prefix(level_); }

  bool in_family() const { return rank() == 1 || u_.last_bit() == 0; }

  // Support B: the cell itself for rank 1, the parent cell of the unshifted
  // index for rank >= 2.
  Interval support() const;

  std::string str() const { return u_.str(); }

  std::strong_ordering operator<=>(const BasisIndex& o) const;
  bool operator==(const BasisIndex& o) const = default;

 private:
  int level_ = 1;
  TreeIndex u_;
};

// Regroup an unshifted index to its level-l view and back.
BasisIndex theta_shift(int level, const TreeIndex& j);
TreeIndex theta_inverse(const BasisIndex& i);

// Value of the basis function labelled i at x. Rank 1: the normalized cell
// indicator, amplitude 2^{(level-1)/2}.  Rank r >= 2 with unshifted rank
// L = level + r - 1: the Haar step on the support, amplitude 2^{(L-2)/2},
// positive on the left half.  Requires i.in_family().
Real eval_basis(const BasisIndex& i, Real x);

// All family labels of level-l rank <= max_rank whose support lies inside the
// window; rank-major, then position order.  Size is window length * 2^{level-1}
// * 2^{max_rank-1}.
std::vector<BasisIndex> basis_indices(int level, int max_rank, const Window& window);

// The mark density |f_i|^2 is the uniform law on the support.
Real sample_mark(const BasisIndex& i, CounterRng& rng);

}  // namespace alphadpp

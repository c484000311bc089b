#include "alphadpp/tree.hpp"

#include <cmath>
#include <sstream>

namespace alphadpp {

namespace {
constexpr int kMaxRank = 48;  // keeps every cell boundary exact in a double

void check_rank(int rank, const char* who) {
  if (rank < 1 || rank > kMaxRank)
    throw contract_error(std::string(who) + ": rank/level out of [1, 48]");
}
}  // namespace

TreeIndex TreeIndex::make(std::int64_t root, const std::vector<int>& bits) {
  check_rank(static_cast<int>(bits.size()) + 1, "TreeIndex");
  std::uint64_t packed = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] != 0 && bits[k] != 1) throw contract_error("TreeIndex: bits must be 0/1");
    packed |= static_cast<std::uint64_t>(bits[k]) << k;
  }
  return TreeIndex(root, packed, static_cast<int>(bits.size()));
}

TreeIndex TreeIndex::enclosing(int rank, Real x) {
  check_rank(rank, "TreeIndex::enclosing");
  const Real root_f = std::floor(x);
  TreeIndex idx(static_cast<std::int64_t>(root_f), 0, 0);
  Real frac = x - root_f;
  for (int n = 2; n <= rank; ++n) {
    const Real half = std::ldexp(1.0, -(n - 1));
    if (frac >= half) {
      idx = idx.child(1);
      frac -= half;
    } else {
      idx = idx.child(0);
    }
  }
  return idx;
}

int TreeIndex::bit(int k) const {
  if (k < 0 || k >= nbits_) throw contract_error("TreeIndex::bit: out of range");
  return static_cast<int>((bits_ >> k) & 1);
}

int TreeIndex::last_bit() const {
  if (nbits_ == 0) throw contract_error("TreeIndex::last_bit: rank-1 index");
  return bit(nbits_ - 1);
}

std::vector<int> TreeIndex::bits() const {
  std::vector<int> out(nbits_);
  for (int k = 0; k < nbits_; ++k) out[k] = bit(k);
  return out;
}

TreeIndex TreeIndex::child(int b) const {
  if (b != 0 && b != 1) throw contract_error("TreeIndex::child: bit must be 0/1");
  check_rank(rank() + 1, "TreeIndex::child");
  return TreeIndex(root_, bits_ | (static_cast<std::uint64_t>(b) << nbits_), nbits_ + 1);
}

TreeIndex TreeIndex::parent() const {
  if (nbits_ == 0) throw contract_error("TreeIndex::parent: rank-1 index");
  const int nb = nbits_ - 1;
  return TreeIndex(root_, bits_ & ((std::uint64_t{1} << nb) - 1), nb);
}

TreeIndex TreeIndex::prefix(int rank) const {
  if (rank < 1 || rank > this->rank()) throw contract_error("TreeIndex::prefix: bad rank");
  const int nb = rank - 1;
  return TreeIndex(root_, bits_ & ((nb == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << nb) - 1)),
                   nb);
}

bool TreeIndex::is_prefix_of(const TreeIndex& o) const {
  return rank() <= o.rank() && o.prefix(rank()) == *this;
}

Real TreeIndex::lower() const {
  Real j = static_cast<Real>(root_);
  for (int k = 0; k < nbits_; ++k)
    if ((bits_ >> k) & 1) j += std::ldexp(1.0, -(k + 1));
  return j;
}

std::string TreeIndex::str() const {
  std::ostringstream os;
  os << '(' << root_ << ';';
  for (int k = 0; k < nbits_; ++k) os << bit(k);
  os << ')';
  return os.str();
}

TreeIndex TreeIndex::parse(const std::string& text) {
  const auto fail = [&] { throw contract_error("TreeIndex: cannot parse '" + text + "'"); };
  if (text.size() < 4 || text.front() != '(' || text.back() != ')') fail();
  const auto semi = text.find(';');
  if (semi == std::string::npos) fail();
  std::int64_t root = 0;
  try {
    std::size_t used = 0;
    root = std::stoll(text.substr(1, semi - 1), &used);
    if (used != semi - 1) fail();
  } catch (const std::exception&) {
    fail();
  }
  std::vector<int> bits;
  for (std::size_t p = semi + 1; p + 1 < text.size(); ++p) {
    if (text[p] != '0' && text[p] != '1') fail();
    bits.push_back(text[p] - '0');
  }
  return make(root, bits);
}

std::strong_ordering TreeIndex::operator<=>(const TreeIndex& o) const {
  if (auto c = root_ <=> o.root_; c != 0) return c;
  const int n = std::min(nbits_, o.nbits_);
  for (int k = 0; k < n; ++k)
    if (auto c = bit(k) <=> o.bit(k); c != 0) return c;
  return nbits_ <=> o.nbits_;
}

bool Window::aligned(int level) const {
  check_rank(level, "Window::aligned");
  if (!(b > a)) return false;
  const Real h = std::ldexp(1.0, 1 - level);
  const Real na = a / h, nb = b / h;
  return std::abs(na - std::round(na)) < 1e-9 && std::abs(nb - std::round(nb)) < 1e-9;
}

std::int64_t Window::cell_count(int level) const {
  if (!aligned(level))
    throw contract_error("window endpoints are not aligned to the level-" +
                         std::to_string(level) + " cell grid");
  const Real h = std::ldexp(1.0, 1 - level);
  return std::llround((b - a) / h);
}

std::vector<TreeIndex> Window::cells(int level) const {
  const std::int64_t n = cell_count(level);
  if (n > (std::int64_t{1} << 22)) throw resource_error("Window::cells: cell-count guard");
  const Real h = std::ldexp(1.0, 1 - level);
  std::vector<TreeIndex> out;
  out.reserve(n);
  for (std::int64_t k = 0; k < n; ++k)
    out.push_back(TreeIndex::enclosing(level, a + (static_cast<Real>(k) + 0.5) * h));
  return out;
}

BasisIndex::BasisIndex(int level, TreeIndex unshifted) : level_(level), u_(std::move(unshifted)) {
  check_rank(level, "BasisIndex");
  if (u_.rank() < level_)
    throw contract_error("BasisIndex: unshifted rank below level");
}

Interval BasisIndex::support() const {
  if (rank() == 1) return u_.cell_interval();
  return u_.parent().cell_interval();
}

std::strong_ordering BasisIndex::operator<=>(const BasisIndex& o) const {
  if (auto c = level_ <=> o.level_; c != 0) return c;
  return u_ <=> o.u_;
}

BasisIndex theta_shift(int level, const TreeIndex& j) { return BasisIndex(level, j); }

TreeIndex theta_inverse(const BasisIndex& i) { return i.unshifted(); }

Real eval_basis(const BasisIndex& i, Real x) {
  if (!i.in_family())
    throw contract_error("eval_basis: index outside the orthonormal family (last bit 1)");
  if (i.rank() == 1) {
    const Interval c = i.unshifted().cell_interval();
    return c.contains(x) ? std::pow(2.0, 0.5 * (i.level() - 1)) : 0.0;
  }
  const Interval b = i.support();
  if (!b.contains(x)) return 0.0;
  const int L = i.unshifted().rank();
  const Real amp = std::pow(2.0, 0.5 * (L - 2));
  return x < b.mid() ? amp : -amp;
}

std::vector<BasisIndex> basis_indices(int level, int max_rank, const Window& window) {
  check_rank(level, "basis_indices");
  if (max_rank < 1 || level + max_rank - 1 > kMaxRank)
    throw contract_error("basis_indices: rank out of range");
  if (max_rank > 20) throw resource_error("basis_indices: rank guard (2^{R-1} growth)");
  std::vector<BasisIndex> out;
  for (const TreeIndex& c : window.cells(level)) out.emplace_back(level, c);
  for (int r = 2; r <= max_rank; ++r) {
    // rank-r supports are the level (level + r - 2) cells; the unshifted index
    // appends the mandatory 0 bit
    for (const TreeIndex& s : window.cells(level + r - 2))
      out.emplace_back(level, s.child(0));
  }
  return out;
}

Real sample_mark(const BasisIndex& i, CounterRng& rng) {
  if (!i.in_family()) throw contract_error("sample_mark: index outside the orthonormal family");
  const Interval b = i.support();
  return rng.uniform_in(b.lo, b.hi);
}

}  // namespace alphadpp

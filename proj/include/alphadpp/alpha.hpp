#pragma once

#include <cstdint>
#include <string>

#include "alphadpp/types.hpp"

namespace alphadpp {

// Interpolation parameter restricted to the admissible set
//   { 2/m : m natural } ∪ { -1/m : m natural }.
// Values are stored in reduced form p/q with q >= 1.  Every positive member
// has reduced numerator 1 or 2 (1/q == 2/(2q)); every negative member has
// reduced numerator -1.  Construction from any other rational throws.
class AlphaParam {
 public:
  static AlphaParam of(std::int64_t num, std::int64_t den);
  // Accepts "p", "p/q"; also an exact decimal like "-0.5" when it reduces to
  // an admissible rational with denominator <= 64.
  static AlphaParam parse(const std::string& text);
  static AlphaParam from_value(Real x);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  Real value() const { return static_cast<Real>(num_) / static_cast<Real>(den_); }
  bool negative() const { return num_ < 0; }

  // m with alpha == -1/m (negative branch) or alpha == 2/m (positive branch).
  int superposition_order() const;

  std::string str() const;

  friend bool operator==(const AlphaParam& a, const AlphaParam& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  AlphaParam(std::int64_t n, std::int64_t d) : num_(n), den_(d) {}
  std::int64_t num_, den_;
};

inline const char* kAlphaAdmissibleSet = "{2/m : m natural} or {-1/m : m natural}";

}  // namespace alphadpp

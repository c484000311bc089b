#include "alphadpp/alpha.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace alphadpp {

AlphaParam AlphaParam::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw contract_error("alpha: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  if (num == 0) {
    throw contract_error("alpha = 0 is not admissible; admissible set is " +
                         std::string(kAlphaAdmissibleSet));
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  num /= g;
  den /= g;
  // Normalize positives to the 2/m form so den == m directly when num == 2.
  if (num != -1 && num != 1 && num != 2) {
    std::ostringstream os;
    os << "alpha = " << num << "/" << den
       << " is not admissible; admissible set is " << kAlphaAdmissibleSet;
    throw contract_error(os.str());
  }
  return AlphaParam(num, den);
}

int AlphaParam::superposition_order() const {
  if (num_ == -1) return static_cast<int>(den_);
  if (num_ == 2) return static_cast<int>(den_);
  return static_cast<int>(2 * den_);  // num_ == 1: 1/q == 2/(2q)
}

std::string AlphaParam::str() const {
  std::ostringstream os;
  os << num_;
  if (den_ != 1) os << "/" << den_;
  return os.str();
}

AlphaParam AlphaParam::from_value(Real x) {
  for (std::int64_t q = 1; q <= 64; ++q) {
    const Real pr = x * static_cast<Real>(q);
    const Real p = std::round(pr);
    if (std::abs(pr - p) < 1e-12 && p != 0.0) {
      return of(static_cast<std::int64_t>(p), q);
    }
  }
  throw contract_error("alpha value does not reduce to an admissible rational; "
                       "admissible set is " + std::string(kAlphaAdmissibleSet));
}

AlphaParam AlphaParam::parse(const std::string& text) {
  std::string s = text;
  // trim
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw contract_error("alpha: empty string");
  s = s.substr(b, e - b + 1);
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      const std::int64_t num = std::stoll(s.substr(0, slash), &p1);
      const std::int64_t den = std::stoll(s.substr(slash + 1), &p2);
      if (p1 != slash || p2 != s.size() - slash - 1)
        throw contract_error("alpha: trailing characters in '" + text + "'");
      return of(num, den);
    }
    if (s.find('.') != std::string::npos) {
      std::size_t p = 0;
      const Real v = std::stod(s, &p);
      if (p != s.size())
        throw contract_error("alpha: trailing characters in '" + text + "'");
      return from_value(v);
    }
    std::size_t p = 0;
    const std::int64_t v = std::stoll(s, &p);
    if (p != s.size())
      throw contract_error("alpha: trailing characters in '" + text + "'");
    return of(v, 1);
  } catch (const std::invalid_argument& ex) {
    if (dynamic_cast<const contract_error*>(&ex)) throw;
    throw contract_error("alpha: cannot parse '" + text + "'");
  } catch (const std::out_of_range&) {
    throw contract_error("alpha: out of range '" + text + "'");
  }
}

}  // namespace alphadpp

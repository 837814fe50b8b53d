#ifndef PROBMETRICS_RATIONAL_HPP
#define PROBMETRICS_RATIONAL_HPP

// Exact rational scalar used throughout the library.  All distances,
// masses and coordinates are arbitrary-precision rationals; doubles
// appear only as labeled approximations in reports.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace probmetrics {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Raised on any malformed input (files, CLI arguments, constructor
// preconditions).  The CLI maps it to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p/q", "-p/q" or a plain integer, canonically reduced on parse.
// Anything else (decimals included) is rejected so that file formats stay
// exact by construction.
inline Rat parse_rational(const std::string& text, const std::string& context = "") {
  auto fail = [&]() -> Rat {
    std::string where = context.empty() ? "" : (" in " + context);
    throw ValidationError("malformed rational '" + text + "'" + where +
                          " (expected p/q or integer)");
  };
  if (text.empty()) return fail();
  std::size_t slash = text.find('/');
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  auto strip_plus = [](const std::string& s) { return s[0] == '+' ? s.substr(1) : s; };
  if (slash == std::string::npos) {
    if (!is_int(text)) return fail();
    return Rat(BigInt(strip_plus(text)));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_int(num) || !is_int(den)) return fail();
  BigInt d{strip_plus(den)};
  if (d == 0) return fail();
  return Rat(BigInt(strip_plus(num)), d);
}

// Canonical reduced rendering: "3/8", "-3/8", "2".  Never "6/16".
inline std::string to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline double approx(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

}  // namespace probmetrics

#endif  // PROBMETRICS_RATIONAL_HPP

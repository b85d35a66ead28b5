#include "qdarwin/logreal.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace qdarwin {

LogReal LogReal::parse(std::string_view text) {
  // Split "<mantissa>[eE<exponent>]" ourselves so the decimal exponent feeds
  // the log directly instead of round-tripping through a huge double.
  std::size_t epos = text.find_first_of("eE");
  std::string_view mant_text = text.substr(0, epos);
  long long exp10 = 0;
  if (epos != std::string_view::npos) {
    std::string_view exp_text = text.substr(epos + 1);
    if (exp_text.empty()) throw InvalidParameter("LogReal: empty exponent");
    std::size_t start = (exp_text[0] == '+') ? 1 : 0;
    auto res = std::from_chars(exp_text.data() + start,
                               exp_text.data() + exp_text.size(), exp10);
    if (res.ec != std::errc{} || res.ptr != exp_text.data() + exp_text.size())
      throw InvalidParameter("LogReal: malformed exponent");
  }
  if (mant_text.empty()) throw InvalidParameter("LogReal: empty mantissa");
  double mantissa = 0.0;
  {
    std::string buf(mant_text);
    char* end = nullptr;
    mantissa = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size())
      throw InvalidParameter("LogReal: malformed mantissa");
  }
  return from_decimal(mantissa, exp10);
}

std::string LogReal::str() const {
  const double l10 = log10();
  const double rounded = std::round(l10);
  char buf[64];
  if (std::abs(l10 - rounded) < 1e-12 && std::abs(rounded) < 1e15) {
    std::snprintf(buf, sizeof(buf), "1e%+lld", static_cast<long long>(rounded));
    return buf;
  }
  const double k = std::floor(l10);
  const double mantissa = std::pow(10.0, l10 - k);
  std::snprintf(buf, sizeof(buf), "%.12ge%+lld", mantissa, static_cast<long long>(k));
  return buf;
}

} // namespace qdarwin

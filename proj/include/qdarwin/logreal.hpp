#ifndef QDARWIN_LOGREAL_HPP
#define QDARWIN_LOGREAL_HPP

#include <cmath>
#include <string>
#include <string_view>

#include "qdarwin/errors.hpp"

namespace qdarwin {

// Strictly positive real held by its natural logarithm, so that quantities
// like fragment counts up to 1e300 (and intermediate powers of them) never
// overflow. Scientific-notation inputs are split into (mantissa, exponent)
// before taking logs, so "1e60" enters as 60*ln(10) + ln(1) exactly.
class LogReal {
public:
  LogReal() : ln_(0.0) {}

  static LogReal from_value(double v) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidParameter("LogReal: value must be positive and finite");
    return LogReal(std::log(v));
  }

  static LogReal from_ln(double ln_value) {
    if (!std::isfinite(ln_value))
      throw InvalidParameter("LogReal: log value must be finite");
    return LogReal(ln_value);
  }

  static LogReal from_decimal(double mantissa, long long exp10) {
    if (!(mantissa > 0.0) || !std::isfinite(mantissa))
      throw InvalidParameter("LogReal: mantissa must be positive and finite");
    return LogReal(std::log(mantissa) +
                   static_cast<double>(exp10) * std::log(10.0));
  }

  // Accepts "123", "1.5e29", "2E+60", ".5e-3".
  static LogReal parse(std::string_view text);

  double ln() const { return ln_; }
  double log10() const { return ln_ / std::log(10.0); }
  double value() const { return std::exp(ln_); }  // +inf past ~1e308

  // "1e+60" when the decimal exponent is integral, "%.12g"-style otherwise.
  std::string str() const;

  friend bool operator<(LogReal a, LogReal b) { return a.ln_ < b.ln_; }
  friend bool operator>(LogReal a, LogReal b) { return a.ln_ > b.ln_; }
  friend bool operator==(LogReal a, LogReal b) { return a.ln_ == b.ln_; }

private:
  explicit LogReal(double ln_value) : ln_(ln_value) {}
  double ln_;
};

} // namespace qdarwin

#endif

#ifndef QDARWIN_ERRORS_HPP
#define QDARWIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qdarwin {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidOperator : public Error { public: using Error::Error; };
class ShapeError : public Error { public: using Error::Error; };
class InvalidParameter : public Error { public: using Error::Error; };
class NotAState : public Error { public: using Error::Error; };
class InvalidPOVM : public Error { public: using Error::Error; };
class IndexError : public Error { public: using Error::Error; };
class DomainError : public Error { public: using Error::Error; };
class DomainTooSmall : public Error { public: using Error::Error; };
class NoFeasiblePoint : public Error { public: using Error::Error; };
class InvalidData : public Error { public: using Error::Error; };
class InvalidInterval : public Error { public: using Error::Error; };
class InvalidBudget : public Error { public: using Error::Error; };
class SamplerError : public Error { public: using Error::Error; };

} // namespace qdarwin

#endif

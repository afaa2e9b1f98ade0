#pragma once

#include <stdexcept>
#include <string>

namespace lpplab {

/// Precondition violations on public entry points.
class InvalidArgument : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An analysis needed data beyond the sampled window.
class TruncationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The second-class particle never left the origin inside the window.
class NoSinkExit : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent persisted data.
class SchemaError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw InvalidArgument(what);
}

}  // namespace lpplab

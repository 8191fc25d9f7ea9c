#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetauniv {

// Base for every failure raised by the library. The CLI maps subclasses to
// exit codes: ConfigError/ParseError -> 1, everything numeric -> 3.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class PoleError : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

// log zeta could not be continued: the path came within the near-zero
// threshold of a zero of zeta.
class BranchError : public Error {
public:
  using Error::Error;
};

class TableError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class CapacityError : public Error {
public:
  using Error::Error;
};

class CoverageError : public Error {
public:
  using Error::Error;
};

class RefinementError : public Error {
public:
  using Error::Error;
};

class ZeroTargetError : public Error {
public:
  using Error::Error;
};

// Syntax errors in expressions, assignment files and zero tables. `where` is a
// character offset for expressions and a 1-based line number for files.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t where,
             const std::string& unit = "position")
      : Error(what + " at " + unit + " " + std::to_string(where)),
        where_(where) {}

  std::size_t where() const { return where_; }

private:
  std::size_t where_;
};

}  // namespace zetauniv

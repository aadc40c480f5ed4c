#pragma once

#include <stdexcept>
#include <string>

namespace forminv {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed textual input: coefficient strings, tree encodings, documents.
class ParseError : public Error {
public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// Violated precondition of an operation: dimension mismatch, division by
// zero, insufficient truncation or order, out-of-range index.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

}  // namespace forminv

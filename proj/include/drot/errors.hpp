// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace drot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed coefficient, rational or seed text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A well-formed value outside the supported domain (square d, lambda
/// outside (-2,2), mixed quadratic fields, division by zero).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its contract, e.g. a symmetric-shortcut search
/// from a seed that lies in neither fixed set.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace drot

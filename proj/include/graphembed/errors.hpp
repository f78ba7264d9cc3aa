#pragma once

#include <stdexcept>
#include <string>

namespace graphembed {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidEdge : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class NotSymmetric : public Error {
 public:
  using Error::Error;
};

class EigFailed : public Error {
 public:
  using Error::Error;
};

// Thrown when a Gram matrix (or other factor) is numerically singular.
// `iteration` is >= 0 when the failure happened inside an iterative scheme.
class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& msg, int iteration = -1)
      : Error(msg), iteration_(iteration) {}
  int iteration() const { return iteration_; }

 private:
  int iteration_;
};

class ZeroColumn : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class NotPsd : public Error {
 public:
  using Error::Error;
};

class InvalidLabel : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace graphembed

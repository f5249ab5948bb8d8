#pragma once

#include <stdexcept>
#include <string>

namespace systolica {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Point off the model, zero tangent where one is required, and similar.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DegenerateConfiguration : public Error {
 public:
  using Error::Error;
};

class NoPerpendicular : public Error {
 public:
  using Error::Error;
};

class NoPentagon : public Error {
 public:
  using Error::Error;
};

class NoPolygon : public Error {
 public:
  NoPolygon(const std::string& what, int index) : Error(what), index_(index) {}
  int index() const noexcept { return index_; }

 private:
  int index_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class InconsistentScene : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class InvalidSignature : public Error {
 public:
  using Error::Error;
};

class InfeasibleSignature : public Error {
 public:
  using Error::Error;
};

}  // namespace systolica

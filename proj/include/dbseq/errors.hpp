#pragma once

#include <stdexcept>

namespace dbseq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside its documented domain (bad q, rank, digit, index, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// gcd(d, q) != 1 where a unit modulo q is required.
class NotCoprime : public Error {
 public:
  using Error::Error;
};

class NoQPrime : public Error {
 public:
  using Error::Error;
};

class NotACycle : public Error {
 public:
  using Error::Error;
};

class MalformedMatrix : public Error {
 public:
  using Error::Error;
};

// q^n exceeds the dense-table budget.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace dbseq

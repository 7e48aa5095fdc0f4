#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hbv {

// Input that violates a structural axiom (group table, algebra constants, files).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Degree requested outside the stored window of a complex.
class WindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A cochain space would exceed the configured dimension cap.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::size_t predicted, std::size_t cap)
      : std::runtime_error("cochain space of dimension " + std::to_string(predicted) +
                           " exceeds budget cap " + std::to_string(cap)),
        predicted_(predicted),
        cap_(cap) {}

  std::size_t predicted() const { return predicted_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t predicted_;
  std::size_t cap_;
};

// The requested model is outside what the engine supports (e.g. even exterior generators).
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical precondition of an operation failed.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hbv

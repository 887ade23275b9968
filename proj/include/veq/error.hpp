#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace veq {

enum class ErrorKind {
  NonComposable,
  MissingCell,
  UnknownProarrow,
  UnknownName,
  MalformedFrame,
  IllFormedInstance,
  NotFound,
  NotUnique,
  BoundsTooSmall,
  FragmentTooLarge,
  CapExceeded,
  ClosureBudgetExceeded,
  InvalidQuantale,
  MalformedMorphism,
  MalformedFunctor,
  Parse,
  Resolution,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int index = -1)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), index_(index) {}

  [[nodiscard]] ErrorKind kind() const { return kind_; }
  // Offending position for NonComposable (inner index), -1 otherwise.
  [[nodiscard]] int index() const { return index_; }

 private:
  ErrorKind kind_;
  int index_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& expected)
      : Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                    ": expected " + expected),
        line_(line),
        column_(column),
        expected_(expected) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }
  [[nodiscard]] const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace veq

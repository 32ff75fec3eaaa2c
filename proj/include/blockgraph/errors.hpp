#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace blockgraph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Could not open, read or write a file.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed ASCII input. line() is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  enum class Kind { bad_magic, unsupported_version, truncated, corrupt };

  FormatError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

class ArenaError : public Error {
 public:
  using Error::Error;
};

// A kernel threw while executing a task.
class KernelError : public Error {
 public:
  KernelError(const std::string& what, std::size_t list_id, std::size_t iteration)
      : Error(what), list_id_(list_id), iteration_(iteration) {}
  std::size_t list_id() const noexcept { return list_id_; }
  std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t list_id_;
  std::size_t iteration_;
};

}  // namespace blockgraph

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schemadig {

// Base class for all errors raised by the library. CLI maps InputError to
// exit code 1 and everything else to exit code 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
  using Error::Error;
};

class FileNotFoundError : public InputError {
public:
  explicit FileNotFoundError(const std::string& path)
      : InputError("file not found or not readable: " + path), path_(path) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

class RaggedRowError : public InputError {
public:
  RaggedRowError(std::size_t row, std::size_t expected, std::size_t found)
      : InputError("row " + std::to_string(row) + ": expected " +
                   std::to_string(expected) + " fields, found " +
                   std::to_string(found)),
        row_(row), expected_(expected), found_(found) {}
  std::size_t row() const { return row_; }
  std::size_t expected() const { return expected_; }
  std::size_t found() const { return found_; }

private:
  std::size_t row_;
  std::size_t expected_;
  std::size_t found_;
};

class EmptyInputError : public InputError {
public:
  EmptyInputError() : InputError("input contains no data rows") {}
};

class DuplicateAttributeError : public InputError {
public:
  explicit DuplicateAttributeError(const std::string& name)
      : InputError("duplicate attribute name (case-insensitive): " + name),
        name_(name) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class InvalidAttributeError : public InputError {
public:
  explicit InvalidAttributeError(const std::string& what) : InputError(what) {}
};

class CapacityError : public InputError {
public:
  using InputError::InputError;
};

// Downward closure of a frequent-itemset list was violated; indicates a
// miner bug, not bad input.
class MissingSubsetSupportError : public Error {
public:
  using Error::Error;
};

class KeySearchBudgetError : public Error {
public:
  explicit KeySearchBudgetError(std::size_t budget)
      : Error("candidate key search exceeded budget of " +
              std::to_string(budget) + " visited sets") {}
};

class NoKeyAvailableError : public Error {
public:
  NoKeyAvailableError() : Error("no candidate key available for synthesis") {}
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace schemadig

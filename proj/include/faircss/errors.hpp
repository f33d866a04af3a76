#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace faircss {

/// Broad error classes. The command-line front end maps each one to its own
/// exit code.
enum class ErrorKind { io, precondition, infeasible, budget, numerical };

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorKind::precondition, what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what)
      : Error(ErrorKind::infeasible, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::numerical, what) {}
};

class BudgetExceededError : public Error {
 public:
  BudgetExceededError(std::uint64_t required, std::uint64_t budget);

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// A matrix (or group submatrix) does not have the rank an operation needs.
class RankError : public PreconditionError {
 public:
  RankError(std::string subject, std::ptrdiff_t rank, std::ptrdiff_t k,
            const std::string& requirement);

  const std::string& subject() const noexcept { return subject_; }
  std::ptrdiff_t rank() const noexcept { return rank_; }
  std::ptrdiff_t k() const noexcept { return k_; }

 private:
  std::string subject_;
  std::ptrdiff_t rank_;
  std::ptrdiff_t k_;
};

/// The leverage mass of a subset is at most k - 1, so no epsilon in (0, 1)
/// makes the relative-error bound apply.
class ThresholdShortfallError : public PreconditionError {
 public:
  ThresholdShortfallError(double mass, std::ptrdiff_t k);

  double mass() const noexcept { return mass_; }

 private:
  double mass_;
};

enum class DataErrorCode {
  missing_group_column,
  unknown_column,
  empty_group,
  non_numeric_value,
  malformed_csv,
  degenerate_column,
  bad_spec,
  bad_format,
};

const char* to_string(DataErrorCode code) noexcept;

/// Dataset ingestion failure. Row and column are reported when they apply
/// (row is the 1-based line number in the source file).
class DataError : public PreconditionError {
 public:
  DataError(DataErrorCode code, const std::string& what, std::size_t row = 0,
            std::string column = {});

  DataErrorCode code() const noexcept { return code_; }
  std::size_t row() const noexcept { return row_; }
  const std::string& column() const noexcept { return column_; }

 private:
  DataErrorCode code_;
  std::size_t row_;
  std::string column_;
};

/// Wraps a failure raised inside one stage of a multi-stage pipeline.
class StageError : public Error {
 public:
  StageError(int stage, const Error& inner);

  int stage() const noexcept { return stage_; }

 private:
  int stage_;
};

}  // namespace faircss

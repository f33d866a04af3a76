#include "faircss/errors.hpp"

#include <sstream>
#include <utility>

namespace faircss {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::io: return "io";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::budget: return "budget";
    case ErrorKind::numerical: return "numerical";
  }
  return "unknown";
}

const char* to_string(DataErrorCode code) noexcept {
  switch (code) {
    case DataErrorCode::missing_group_column: return "missing_group_column";
    case DataErrorCode::unknown_column: return "unknown_column";
    case DataErrorCode::empty_group: return "empty_group";
    case DataErrorCode::non_numeric_value: return "non_numeric_value";
    case DataErrorCode::malformed_csv: return "malformed_csv";
    case DataErrorCode::degenerate_column: return "degenerate_column";
    case DataErrorCode::bad_spec: return "bad_spec";
    case DataErrorCode::bad_format: return "bad_format";
  }
  return "unknown";
}

BudgetExceededError::BudgetExceededError(std::uint64_t required, std::uint64_t budget)
    : Error(ErrorKind::budget, "enumeration needs " + std::to_string(required) +
                                   " subsets, budget is " + std::to_string(budget)),
      required_(required),
      budget_(budget) {}

RankError::RankError(std::string subject, std::ptrdiff_t rank, std::ptrdiff_t k,
                     const std::string& requirement)
    : PreconditionError(subject + " has numerical rank " + std::to_string(rank) +
                        ", but k = " + std::to_string(k) + " requires " + requirement),
      subject_(std::move(subject)),
      rank_(rank),
      k_(k) {}

namespace {

std::string shortfall_message(double mass, std::ptrdiff_t k) {
  std::ostringstream os;
  os << "leverage mass " << mass << " does not exceed k - 1 = " << (k - 1)
     << "; the relative-error bound is vacuous";
  return os.str();
}

}  // namespace

ThresholdShortfallError::ThresholdShortfallError(double mass, std::ptrdiff_t k)
    : PreconditionError(shortfall_message(mass, k)), mass_(mass) {}

DataError::DataError(DataErrorCode code, const std::string& what, std::size_t row,
                     std::string column)
    : PreconditionError(what), code_(code), row_(row), column_(std::move(column)) {}

StageError::StageError(int stage, const Error& inner)
    : Error(inner.kind(), "stage " + std::to_string(stage) + ": " + inner.what()),
      stage_(stage) {}

}  // namespace faircss

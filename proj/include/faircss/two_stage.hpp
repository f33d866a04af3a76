#pragma once

#include <optional>
#include <string_view>

#include "faircss/dataset.hpp"
#include "faircss/fair_sampler.hpp"
#include "faircss/matrix.hpp"

namespace faircss {

enum class Refiner { low_qr, high_qr, greedy };

/// Accepts "low-qr", "high-qr", "greedy".
std::optional<Refiner> parse_refiner(std::string_view name);
const char* to_string(Refiner refiner) noexcept;

struct TwoStageReport {
  ColumnSet stage_one;  // sorted
  ColumnSet columns;    // sorted, exactly k, a subset of stage_one
  Index c = 0;          // |stage_one|
  double stage_one_seconds = 0.0;
  double stage_two_seconds = 0.0;
  double minmax = 0.0;  // objective of `columns` at target rank k
};

/// Stage 1 runs the fair sampler on rank-k leverage pairs of the full data.
/// Stage 2 runs the refiner on the columns stage 1 kept and maps its picks
/// back to original indices. The QR refiners see the column-restricted data
/// (no renormalization); greedy keeps the full-data denominators and only
/// restricts its candidates. If stage 1 keeps exactly k columns they are
/// returned as is.
///
/// Failures inside a stage are rethrown as StageError (same error class);
/// a stage-one set smaller than k is a PreconditionError that suggests a
/// larger theta.
TwoStageReport two_stage_select(const GroupedData& data, Index k, const SamplerConfig& theta,
                                Refiner refiner);

}  // namespace faircss

#include "faircss/two_stage.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "faircss/baselines.hpp"
#include "faircss/errors.hpp"
#include "faircss/evaluation.hpp"
#include "faircss/fair_rrqr.hpp"
#include "faircss/leverage.hpp"

namespace faircss {

std::optional<Refiner> parse_refiner(std::string_view name) {
  if (name == "low-qr") return Refiner::low_qr;
  if (name == "high-qr") return Refiner::high_qr;
  if (name == "greedy") return Refiner::greedy;
  return std::nullopt;
}

const char* to_string(Refiner refiner) noexcept {
  switch (refiner) {
    case Refiner::low_qr: return "low-qr";
    case Refiner::high_qr: return "high-qr";
    case Refiner::greedy: return "greedy";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename F>
auto in_stage(int stage, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

}  // namespace

TwoStageReport two_stage_select(const GroupedData& data, Index k, const SamplerConfig& theta,
                                Refiner refiner) {
  TwoStageReport report;
  auto start = Clock::now();
  report.stage_one = in_stage(1, [&] {
    theta.validate(k);
    return fair_scores_sample(leverage_pairs(data, k), theta).columns;
  });
  report.stage_one_seconds = seconds_since(start);
  report.c = static_cast<Index>(report.stage_one.size());
  if (report.c < k) {
    std::ostringstream os;
    os << "stage 1 kept only " << report.c << " columns but k = " << k
       << "; raise theta (currently " << theta.theta_a << ", " << theta.theta_b << ")";
    throw PreconditionError(os.str());
  }

  start = Clock::now();
  const MinMaxObjective objective(data, k);
  if (report.c == k) {
    report.columns = report.stage_one;
  } else {
    report.columns = in_stage(2, [&] {
      ColumnSet picked;
      if (refiner == Refiner::greedy) {
        picked = greedy_minmax(objective, k, report.stage_one);
      } else {
        const GroupedData restricted = data.restrict_columns(report.stage_one);
        const auto local = refiner == Refiner::low_qr ? fair_low_rrqr(restricted, k)
                                                      : fair_high_rrqr(restricted, k);
        for (std::size_t j : local.columns) picked.push_back(report.stage_one[j]);
      }
      std::sort(picked.begin(), picked.end());
      return picked;
    });
  }
  report.stage_two_seconds = seconds_since(start);
  report.minmax = objective(report.columns);
  return report;
}

}  // namespace faircss

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wh/event.hpp"
#include "wh/matrix.hpp"

namespace wh {

struct AsGiven {};
struct ShuffledEpochs {
    std::uint64_t seed = 0;
};
// Events sorted ascending by their single outcome value, each repeated
// `repeats` times consecutively. Requires exactly one outcome column.
struct SortedByOutcomePerTrialRepeat {
    std::uint64_t repeats = 1;
};
using SchedulePolicy = std::variant<AsGiven, ShuffledEpochs, SortedByOutcomePerTrialRepeat>;

std::string to_string(const SchedulePolicy& policy);

struct TracePlan {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> watched;  // (cue, outcome)
    std::uint64_t stride = 0;  // 0 = auto: 1 up to 1e5 scheduled events, then ceil(total/1e5)
};

struct WeightTrace {
    struct Record {
        std::uint64_t event = 0;
        double weight = 0.0;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> watched;
    std::uint64_t stride = 1;
    std::vector<std::vector<Record>> series;  // aligned with watched

    bool empty() const { return watched.empty(); }
};

struct TrainingConfig {
    double learning_rate = 0.1;
    SchedulePolicy ordering = AsGiven{};
    std::uint64_t epochs = 1;
    std::optional<TracePlan> trace;
    Precision precision = Precision::Double;

    // Throws ConfigError on hard errors; returns human-readable warnings
    // (gamma >= 1 breaks the gradual-updates assumption but is permitted).
    std::vector<std::string> validate() const;
};

// net input per outcome: y_in[m] = sum_i x_i * W[i,m]
std::vector<double> predict(const LearningEvent& event, const WeightMatrix& weights);

// W += gamma * outer(cues, targets - predict(event, W)), prediction taken
// from the pre-update weights; all outcome columns updated at once.
void update_event(WeightMatrix& weights, const LearningEvent& event, double learning_rate);

// Materialized presentation order. `outcome_values` (one per event) is
// required by the sorted policy and ignored otherwise.
std::vector<std::uint32_t> make_schedule(std::size_t n_events, const SchedulePolicy& policy,
                                         std::uint64_t epochs = 1,
                                         std::span<const double> outcome_values = {});
std::vector<std::uint32_t> make_schedule(const EventSet& events, const SchedulePolicy& policy,
                                         std::uint64_t epochs = 1);
std::uint64_t scheduled_event_count(std::size_t n_events, const SchedulePolicy& policy,
                                    std::uint64_t epochs);
// outcome value used by the sorted policy (requires outcome_dim == 1)
std::vector<double> single_outcome_values(const EventSet& events);

struct TrainResult {
    WeightMatrix weights;
    WeightTrace trace;
};

// Applies update_event along the schedule, strictly sequentially. The result
// is bit-identical for a fixed seed, precision and schedule.
TrainResult train(const EventSet& events, const TrainingConfig& config);

// --- weight snapshots ---------------------------------------------------

// TSV: header row of outcome labels, first column cue labels, %.17g values.
void write_weights_tsv(std::ostream& out, const WeightMatrix& weights,
                       std::span<const std::string> cue_labels,
                       std::span<const std::string> outcome_labels);

// Binary snapshot: magic "WHWB", u64 dims, u8 precision flag, row-major
// little-endian values.
void write_weights_binary(std::ostream& out, const WeightMatrix& weights);
WeightMatrix read_weights_binary(std::istream& in);

void write_trace_tsv(std::ostream& out, const WeightTrace& trace,
                     std::span<const std::string> cue_labels,
                     std::span<const std::string> outcome_labels);

}  // namespace wh

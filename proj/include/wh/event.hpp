#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wh/error.hpp"

namespace wh {

struct Feature {
    std::uint32_t index = 0;
    double value = 0.0;
};

// One side of a learning event. Entries are kept sorted by index, unique and
// finite; zero-valued entries are dropped (they cannot change a prediction or
// a weight). An empty vector is legal and yields a zero update.
class FeatureVector {
public:
    FeatureVector() = default;
    FeatureVector(std::uint32_t dim, std::vector<Feature> entries);

    static FeatureVector from_dense(std::span<const double> values);
    // indicator vector: value 1.0 at each listed index
    static FeatureVector indicator(std::uint32_t dim, std::span<const std::uint32_t> indices);

    std::uint32_t dim() const { return dim_; }
    const std::vector<Feature>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    std::vector<double> to_dense() const;

private:
    std::uint32_t dim_ = 0;
    std::vector<Feature> entries_;
};

struct LearningEvent {
    FeatureVector cues;
    FeatureVector targets;
};

struct EventSet {
    std::uint32_t cue_dim = 0;
    std::uint32_t outcome_dim = 0;
    std::vector<LearningEvent> events;

    std::size_t size() const { return events.size(); }
    // every event must match the declared dims
    void validate() const;
};

}  // namespace wh

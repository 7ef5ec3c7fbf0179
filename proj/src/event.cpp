#include "wh/event.hpp"

#include <algorithm>
#include <cmath>

namespace wh {

FeatureVector::FeatureVector(std::uint32_t dim, std::vector<Feature> entries) : dim_(dim) {
    std::sort(entries.begin(), entries.end(),
              [](const Feature& a, const Feature& b) { return a.index < b.index; });
    entries_.reserve(entries.size());
    std::uint32_t prev = 0;
    bool first = true;
    for (const Feature& f : entries) {
        if (f.index >= dim_) throw IndexError("feature", f.index, dim_);
        if (!std::isfinite(f.value))
            throw InvalidEventError("non-finite value at index " + std::to_string(f.index));
        if (!first && f.index == prev)
            throw InvalidEventError("duplicate index " + std::to_string(f.index) +
                                    " within one event");
        prev = f.index;
        first = false;
        if (f.value != 0.0) entries_.push_back(f);
    }
}

FeatureVector FeatureVector::from_dense(std::span<const double> values) {
    FeatureVector v;
    v.dim_ = static_cast<std::uint32_t>(values.size());
    for (std::uint32_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i]))
            throw InvalidEventError("non-finite value at index " + std::to_string(i));
        if (values[i] != 0.0) v.entries_.push_back({i, values[i]});
    }
    return v;
}

FeatureVector FeatureVector::indicator(std::uint32_t dim, std::span<const std::uint32_t> indices) {
    std::vector<Feature> entries;
    entries.reserve(indices.size());
    for (std::uint32_t i : indices) entries.push_back({i, 1.0});
    return FeatureVector(dim, std::move(entries));
}

std::vector<double> FeatureVector::to_dense() const {
    std::vector<double> out(dim_, 0.0);
    for (const Feature& f : entries_) out[f.index] = f.value;
    return out;
}

void EventSet::validate() const {
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (events[i].cues.dim() != cue_dim)
            throw DimensionError("event " + std::to_string(i) + " cue vector", cue_dim,
                                 events[i].cues.dim());
        if (events[i].targets.dim() != outcome_dim)
            throw DimensionError("event " + std::to_string(i) + " target vector", outcome_dim,
                                 events[i].targets.dim());
    }
}

}  // namespace wh

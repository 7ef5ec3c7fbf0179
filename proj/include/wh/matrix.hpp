#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wh/error.hpp"

namespace wh {

enum class Precision { Single, Double };

const char* to_string(Precision p);
Precision precision_from_string(std::string_view name);

// Cue-by-outcome weight matrix, row-major with rows = cues so one event
// touches contiguous rows. Freshly created matrices are identically zero.
class WeightMatrix {
public:
    WeightMatrix() = default;
    WeightMatrix(std::size_t cues, std::size_t outcomes, Precision precision = Precision::Double);

    std::size_t cue_count() const { return cues_; }
    std::size_t outcome_count() const { return outcomes_; }
    Precision precision() const { return precision_; }

    double value(std::size_t cue, std::size_t outcome) const;
    void set_value(std::size_t cue, std::size_t outcome, double v);

    std::span<double> values_f64() { return f64_; }
    std::span<const double> values_f64() const { return f64_; }
    std::span<float> values_f32() { return f32_; }
    std::span<const float> values_f32() const { return f32_; }

    std::span<double> row_f64(std::size_t cue) {
        return std::span<double>(f64_).subspan(cue * outcomes_, outcomes_);
    }
    std::span<const double> row_f64(std::size_t cue) const {
        return std::span<const double>(f64_).subspan(cue * outcomes_, outcomes_);
    }
    std::span<float> row_f32(std::size_t cue) {
        return std::span<float>(f32_).subspan(cue * outcomes_, outcomes_);
    }
    std::span<const float> row_f32(std::size_t cue) const {
        return std::span<const float>(f32_).subspan(cue * outcomes_, outcomes_);
    }

    // one outcome column, as double regardless of storage precision
    std::vector<double> column(std::size_t outcome) const;

    // first inf/NaN cell if any, scanning row-major
    std::optional<std::pair<std::size_t, std::size_t>> find_non_finite() const;
    bool all_finite() const { return !find_non_finite().has_value(); }

    double sum() const;  // cheap fingerprint for reports

private:
    void check_cell(std::size_t cue, std::size_t outcome) const;

    std::size_t cues_ = 0;
    std::size_t outcomes_ = 0;
    Precision precision_ = Precision::Double;
    std::vector<float> f32_;
    std::vector<double> f64_;
};

}  // namespace wh

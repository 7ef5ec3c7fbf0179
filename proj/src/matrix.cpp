#include "wh/matrix.hpp"

#include <cmath>

namespace wh {

const char* to_string(Precision p) {
    return p == Precision::Single ? "single" : "double";
}

Precision precision_from_string(std::string_view name) {
    if (name == "single" || name == "float" || name == "f32") return Precision::Single;
    if (name == "double" || name == "f64") return Precision::Double;
    throw ConfigError("unknown precision '" + std::string(name) + "' (use single or double)");
}

WeightMatrix::WeightMatrix(std::size_t cues, std::size_t outcomes, Precision precision)
    : cues_(cues), outcomes_(outcomes), precision_(precision) {
    if (precision_ == Precision::Double) {
        f64_.assign(cues_ * outcomes_, 0.0);
    } else {
        f32_.assign(cues_ * outcomes_, 0.0f);
    }
}

void WeightMatrix::check_cell(std::size_t cue, std::size_t outcome) const {
    if (cue >= cues_) throw IndexError("cue row", cue, cues_);
    if (outcome >= outcomes_) throw IndexError("outcome column", outcome, outcomes_);
}

double WeightMatrix::value(std::size_t cue, std::size_t outcome) const {
    check_cell(cue, outcome);
    const std::size_t i = cue * outcomes_ + outcome;
    return precision_ == Precision::Double ? f64_[i] : static_cast<double>(f32_[i]);
}

void WeightMatrix::set_value(std::size_t cue, std::size_t outcome, double v) {
    check_cell(cue, outcome);
    const std::size_t i = cue * outcomes_ + outcome;
    if (precision_ == Precision::Double) {
        f64_[i] = v;
    } else {
        f32_[i] = static_cast<float>(v);
    }
}

std::vector<double> WeightMatrix::column(std::size_t outcome) const {
    if (outcome >= outcomes_) throw IndexError("outcome column", outcome, outcomes_);
    std::vector<double> out(cues_);
    for (std::size_t i = 0; i < cues_; ++i) {
        const std::size_t cell = i * outcomes_ + outcome;
        out[i] = precision_ == Precision::Double ? f64_[cell] : static_cast<double>(f32_[cell]);
    }
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> WeightMatrix::find_non_finite() const {
    const std::size_t n = cues_ * outcomes_;
    for (std::size_t i = 0; i < n; ++i) {
        const bool ok = precision_ == Precision::Double ? std::isfinite(f64_[i])
                                                        : std::isfinite(f32_[i]);
        if (!ok) return std::make_pair(i / outcomes_, i % outcomes_);
    }
    return std::nullopt;
}

double WeightMatrix::sum() const {
    double s = 0.0;
    if (precision_ == Precision::Double) {
        for (double v : f64_) s += v;
    } else {
        for (float v : f32_) s += static_cast<double>(v);
    }
    return s;
}

}  // namespace wh

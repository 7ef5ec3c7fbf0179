#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wh {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
    std::size_t expected = 0;
    std::size_t got = 0;
    DimensionError(const std::string& what_arg, std::size_t expected_dim, std::size_t got_dim)
        : Error(what_arg + ": expected dimension " + std::to_string(expected_dim) +
                ", got " + std::to_string(got_dim)),
          expected(expected_dim),
          got(got_dim) {}
};

// Malformed event construction: duplicate indices, non-finite values, out-of-range.
struct InvalidEventError : Error {
    using Error::Error;
};

struct IndexError : Error {
    std::size_t index = 0;
    std::size_t bound = 0;
    IndexError(const std::string& what_arg, std::size_t bad_index, std::size_t dim)
        : Error(what_arg + ": index " + std::to_string(bad_index) +
                " out of range (dimension " + std::to_string(dim) + ")"),
          index(bad_index),
          bound(dim) {}
};

// A weight update produced inf or NaN; carries the offending cell.
struct NonFiniteWeightError : Error {
    std::size_t cue = 0;
    std::size_t outcome = 0;
    NonFiniteWeightError(std::size_t cue_row, std::size_t outcome_col)
        : Error("non-finite weight at cue " + std::to_string(cue_row) + ", outcome " +
                std::to_string(outcome_col) + " (learning rate too large or cues unscaled)"),
          cue(cue_row),
          outcome(outcome_col) {}
};

// Update failure during a training run, with the event index attached.
struct TrainError : Error {
    std::size_t event_index = 0;
    TrainError(std::size_t index, const std::string& cause)
        : Error("training failed at event " + std::to_string(index) + ": " + cause),
          event_index(index) {}
};

struct ScheduleError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::string path;
    std::size_t line = 0;
    ParseError(const std::string& file, std::size_t line_number, const std::string& message)
        : Error(file + ":" + std::to_string(line_number) + ": " + message),
          path(file),
          line(line_number) {}
};

struct IoError : Error {
    using Error::Error;
};

// Word missing from an embedding vocabulary; deliberately distinct from other failures.
struct OovError : Error {
    std::string word;
    explicit OovError(const std::string& missing_word)
        : Error("out-of-vocabulary word: " + missing_word), word(missing_word) {}
};

struct ZeroVectorError : Error {
    using Error::Error;
};

// Spearman input whose ranks have no variance.
struct DegenerateRanksError : Error {
    using Error::Error;
};

struct NotPositiveDefiniteError : Error {
    std::size_t pivot = 0;
    explicit NotPositiveDefiniteError(std::size_t failing_pivot)
        : Error("covariance matrix is not positive definite (pivot " +
                std::to_string(failing_pivot) + ")"),
          pivot(failing_pivot) {}
};

struct RankDeficientError : Error {
    using Error::Error;
};

struct PrecisionOverflowError : Error {
    std::size_t cue = 0;
    std::size_t outcome = 0;
    PrecisionOverflowError(std::size_t cue_row, std::size_t outcome_col)
        : Error("value at cue " + std::to_string(cue_row) + ", outcome " +
                std::to_string(outcome_col) + " overflows single precision"),
          cue(cue_row),
          outcome(outcome_col) {}
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace wh

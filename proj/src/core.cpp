#include "wh/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>

#include "wh/rng.hpp"

namespace wh {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

template <typename T>
std::span<T> storage(WeightMatrix& w);
template <>
std::span<double> storage<double>(WeightMatrix& w) {
    return w.values_f64();
}
template <>
std::span<float> storage<float>(WeightMatrix& w) {
    return w.values_f32();
}

template <typename T>
std::span<const T> storage(const WeightMatrix& w);
template <>
std::span<const double> storage<double>(const WeightMatrix& w) {
    return w.values_f64();
}
template <>
std::span<const float> storage<float>(const WeightMatrix& w) {
    return w.values_f32();
}

// Per-event kernel with reusable scratch. The activation is computed from the
// pre-update weights in full before any row is touched.
template <typename T>
class UpdateKernel {
public:
    void predict_into(const WeightMatrix& w, const FeatureVector& cues) {
        const std::size_t k = w.outcome_count();
        buf_.assign(k, T(0));
        const std::span<const T> values = storage<T>(w);
        for (const Feature& f : cues.entries()) {
            const T x = static_cast<T>(f.value);
            const T* row = values.data() + static_cast<std::size_t>(f.index) * k;
            for (std::size_t m = 0; m < k; ++m) buf_[m] += x * row[m];
        }
    }

    std::span<const T> activation() const { return buf_; }

    void apply(WeightMatrix& w, const LearningEvent& event, double learning_rate) {
        const std::size_t k = w.outcome_count();
        predict_into(w, event.cues);
        for (std::size_t m = 0; m < k; ++m) buf_[m] = -buf_[m];
        for (const Feature& f : event.targets.entries()) buf_[f.index] += static_cast<T>(f.value);
        const std::span<T> values = storage<T>(w);
        for (const Feature& f : event.cues.entries()) {
            const T scale = static_cast<T>(learning_rate) * static_cast<T>(f.value);
            T* row = values.data() + static_cast<std::size_t>(f.index) * k;
            for (std::size_t m = 0; m < k; ++m) row[m] += scale * buf_[m];
            for (std::size_t m = 0; m < k; ++m)
                if (!std::isfinite(row[m])) throw NonFiniteWeightError(f.index, m);
        }
    }

private:
    std::vector<T> buf_;
};

void check_event_dims(const LearningEvent& event, const WeightMatrix& w) {
    if (event.cues.dim() != w.cue_count())
        throw DimensionError("event cue vector vs weight rows", w.cue_count(), event.cues.dim());
    if (event.targets.dim() != w.outcome_count())
        throw DimensionError("event target vector vs weight columns", w.outcome_count(),
                             event.targets.dim());
}

std::uint64_t auto_stride(std::uint64_t total) {
    return total <= 100000 ? 1 : (total + 99999) / 100000;
}

std::vector<std::uint32_t> sorted_order(std::span<const double> values) {
    std::vector<std::uint32_t> order(values.size());
    std::iota(order.begin(), order.end(), 0u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
    return order;
}

}  // namespace

std::string to_string(const SchedulePolicy& policy) {
    return std::visit(
        overloaded{[](const AsGiven&) { return std::string("as-given"); },
                   [](const ShuffledEpochs& p) {
                       return "shuffled(seed=" + std::to_string(p.seed) + ")";
                   },
                   [](const SortedByOutcomePerTrialRepeat& p) {
                       return "sorted(repeats=" + std::to_string(p.repeats) + ")";
                   }},
        policy);
}

std::vector<std::string> TrainingConfig::validate() const {
    if (!std::isfinite(learning_rate) || learning_rate <= 0.0)
        throw ConfigError("learning rate must be finite and > 0");
    if (epochs == 0) throw ConfigError("epochs must be positive");
    if (const auto* sorted = std::get_if<SortedByOutcomePerTrialRepeat>(&ordering))
        if (sorted->repeats == 0) throw ConfigError("sorted policy repeats must be positive");
    std::vector<std::string> warnings;
    if (learning_rate >= 1.0)
        warnings.push_back("learning rate " + std::to_string(learning_rate) +
                           " >= 1 breaks the gradual-update assumption");
    return warnings;
}

std::vector<double> predict(const LearningEvent& event, const WeightMatrix& weights) {
    if (event.cues.dim() != weights.cue_count())
        throw DimensionError("event cue vector vs weight rows", weights.cue_count(),
                             event.cues.dim());
    const std::size_t k = weights.outcome_count();
    std::vector<double> out(k, 0.0);
    if (weights.precision() == Precision::Double) {
        UpdateKernel<double> kernel;
        kernel.predict_into(weights, event.cues);
        std::copy(kernel.activation().begin(), kernel.activation().end(), out.begin());
    } else {
        UpdateKernel<float> kernel;
        kernel.predict_into(weights, event.cues);
        std::copy(kernel.activation().begin(), kernel.activation().end(), out.begin());
    }
    return out;
}

void update_event(WeightMatrix& weights, const LearningEvent& event, double learning_rate) {
    check_event_dims(event, weights);
    if (!std::isfinite(learning_rate)) throw ConfigError("learning rate must be finite");
    if (weights.precision() == Precision::Double) {
        UpdateKernel<double> kernel;
        kernel.apply(weights, event, learning_rate);
    } else {
        UpdateKernel<float> kernel;
        kernel.apply(weights, event, learning_rate);
    }
}

std::uint64_t scheduled_event_count(std::size_t n_events, const SchedulePolicy& policy,
                                    std::uint64_t epochs) {
    const std::uint64_t per_epoch = std::visit(
        overloaded{[&](const AsGiven&) { return static_cast<std::uint64_t>(n_events); },
                   [&](const ShuffledEpochs&) { return static_cast<std::uint64_t>(n_events); },
                   [&](const SortedByOutcomePerTrialRepeat& p) {
                       return static_cast<std::uint64_t>(n_events) * p.repeats;
                   }},
        policy);
    return per_epoch * epochs;
}

std::vector<double> single_outcome_values(const EventSet& events) {
    if (events.outcome_dim != 1)
        throw ScheduleError("sorted policy requires exactly one outcome column, got " +
                            std::to_string(events.outcome_dim));
    std::vector<double> values(events.size(), 0.0);
    for (std::size_t i = 0; i < events.size(); ++i) {
        const auto& entries = events.events[i].targets.entries();
        if (!entries.empty()) values[i] = entries.front().value;
    }
    return values;
}

std::vector<std::uint32_t> make_schedule(std::size_t n_events, const SchedulePolicy& policy,
                                         std::uint64_t epochs,
                                         std::span<const double> outcome_values) {
    if (n_events == 0) throw ScheduleError("schedule over an empty event collection");
    if (epochs == 0) throw ScheduleError("epochs must be positive");
    std::vector<std::uint32_t> schedule;
    std::visit(
        overloaded{
            [&](const AsGiven&) {
                schedule.reserve(n_events * epochs);
                for (std::uint64_t e = 0; e < epochs; ++e)
                    for (std::size_t i = 0; i < n_events; ++i)
                        schedule.push_back(static_cast<std::uint32_t>(i));
            },
            [&](const ShuffledEpochs& p) {
                schedule.reserve(n_events * epochs);
                Rng rng(p.seed);
                std::vector<std::uint32_t> perm(n_events);
                for (std::uint64_t e = 0; e < epochs; ++e) {
                    std::iota(perm.begin(), perm.end(), 0u);
                    rng.shuffle(std::span<std::uint32_t>(perm));
                    schedule.insert(schedule.end(), perm.begin(), perm.end());
                }
            },
            [&](const SortedByOutcomePerTrialRepeat& p) {
                if (outcome_values.size() != n_events)
                    throw ScheduleError(
                        "sorted policy needs one outcome value per event (single outcome column)");
                if (p.repeats == 0) throw ScheduleError("sorted policy repeats must be positive");
                const auto order = sorted_order(outcome_values);
                schedule.reserve(n_events * p.repeats * epochs);
                for (std::uint64_t e = 0; e < epochs; ++e)
                    for (std::uint32_t idx : order)
                        for (std::uint64_t r = 0; r < p.repeats; ++r) schedule.push_back(idx);
            }},
        policy);
    return schedule;
}

std::vector<std::uint32_t> make_schedule(const EventSet& events, const SchedulePolicy& policy,
                                         std::uint64_t epochs) {
    if (std::holds_alternative<SortedByOutcomePerTrialRepeat>(policy)) {
        const auto values = single_outcome_values(events);
        return make_schedule(events.size(), policy, epochs, values);
    }
    return make_schedule(events.size(), policy, epochs);
}

namespace {

template <typename T>
void run_schedule(WeightMatrix& w, const EventSet& events, const TrainingConfig& config,
                  WeightTrace* trace) {
    UpdateKernel<T> kernel;
    std::uint64_t counter = 0;
    const std::uint64_t stride = trace ? trace->stride : 1;

    auto record = [&]() {
        for (std::size_t s = 0; s < trace->watched.size(); ++s) {
            const auto [cue, outcome] = trace->watched[s];
            trace->series[s].push_back({counter, w.value(cue, outcome)});
        }
    };
    if (trace && !trace->watched.empty()) record();  // state before any event

    auto apply = [&](std::uint32_t idx) {
        try {
            kernel.apply(w, events.events[idx], config.learning_rate);
        } catch (const NonFiniteWeightError& e) {
            throw TrainError(idx, e.what());
        }
        ++counter;
        if (trace && !trace->watched.empty() && counter % stride == 0) record();
    };

    const std::size_t n = events.size();
    std::visit(overloaded{[&](const AsGiven&) {
                              for (std::uint64_t e = 0; e < config.epochs; ++e)
                                  for (std::size_t i = 0; i < n; ++i)
                                      apply(static_cast<std::uint32_t>(i));
                          },
                          [&](const ShuffledEpochs& p) {
                              Rng rng(p.seed);
                              std::vector<std::uint32_t> perm(n);
                              for (std::uint64_t e = 0; e < config.epochs; ++e) {
                                  std::iota(perm.begin(), perm.end(), 0u);
                                  rng.shuffle(std::span<std::uint32_t>(perm));
                                  for (std::uint32_t idx : perm) apply(idx);
                              }
                          },
                          [&](const SortedByOutcomePerTrialRepeat& p) {
                              const auto values = single_outcome_values(events);
                              const auto order = sorted_order(values);
                              for (std::uint64_t e = 0; e < config.epochs; ++e)
                                  for (std::uint32_t idx : order)
                                      for (std::uint64_t r = 0; r < p.repeats; ++r) apply(idx);
                          }},
               config.ordering);
}

}  // namespace

TrainResult train(const EventSet& events, const TrainingConfig& config) {
    config.validate();
    events.validate();
    if (events.events.empty()) throw ScheduleError("training over an empty event collection");

    TrainResult result;
    result.weights = WeightMatrix(events.cue_dim, events.outcome_dim, config.precision);

    WeightTrace* trace = nullptr;
    if (config.trace) {
        for (const auto& [cue, outcome] : config.trace->watched) {
            if (cue >= events.cue_dim) throw IndexError("traced cue", cue, events.cue_dim);
            if (outcome >= events.outcome_dim)
                throw IndexError("traced outcome", outcome, events.outcome_dim);
        }
        const std::uint64_t total =
            scheduled_event_count(events.size(), config.ordering, config.epochs);
        result.trace.watched = config.trace->watched;
        result.trace.stride = config.trace->stride ? config.trace->stride : auto_stride(total);
        result.trace.series.resize(config.trace->watched.size());
        trace = &result.trace;
    }

    if (config.precision == Precision::Double) {
        run_schedule<double>(result.weights, events, config, trace);
    } else {
        run_schedule<float>(result.weights, events, config, trace);
    }
    return result;
}

// --- snapshots ------------------------------------------------------------

namespace {

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void put_bytes_le(std::ostream& out, std::uint64_t v, int nbytes) {
    char b[8];
    for (int i = 0; i < nbytes; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, nbytes);
}

std::uint64_t get_bytes_le(std::istream& in, int nbytes) {
    char b[8];
    in.read(b, nbytes);
    if (!in) throw IoError("truncated weight snapshot");
    std::uint64_t v = 0;
    for (int i = 0; i < nbytes; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    return v;
}

constexpr char kMagic[4] = {'W', 'H', 'W', 'B'};

}  // namespace

void write_weights_tsv(std::ostream& out, const WeightMatrix& weights,
                       std::span<const std::string> cue_labels,
                       std::span<const std::string> outcome_labels) {
    if (cue_labels.size() != weights.cue_count())
        throw DimensionError("cue labels", weights.cue_count(), cue_labels.size());
    if (outcome_labels.size() != weights.outcome_count())
        throw DimensionError("outcome labels", weights.outcome_count(), outcome_labels.size());
    out << "cue";
    for (const auto& label : outcome_labels) out << '\t' << label;
    out << '\n';
    for (std::size_t i = 0; i < weights.cue_count(); ++i) {
        out << cue_labels[i];
        for (std::size_t m = 0; m < weights.outcome_count(); ++m)
            out << '\t' << g17(weights.value(i, m));
        out << '\n';
    }
}

void write_weights_binary(std::ostream& out, const WeightMatrix& weights) {
    out.write(kMagic, 4);
    put_bytes_le(out, weights.cue_count(), 8);
    put_bytes_le(out, weights.outcome_count(), 8);
    const bool single = weights.precision() == Precision::Single;
    put_bytes_le(out, single ? 1 : 0, 1);
    if (single) {
        for (float v : weights.values_f32()) put_bytes_le(out, std::bit_cast<std::uint32_t>(v), 4);
    } else {
        for (double v : weights.values_f64()) put_bytes_le(out, std::bit_cast<std::uint64_t>(v), 8);
    }
    if (!out) throw IoError("failed to write weight snapshot");
}

WeightMatrix read_weights_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kMagic))
        throw IoError("not a weight snapshot (bad magic)");
    const std::uint64_t cues = get_bytes_le(in, 8);
    const std::uint64_t outcomes = get_bytes_le(in, 8);
    const std::uint64_t flag = get_bytes_le(in, 1);
    if (flag > 1) throw IoError("bad precision flag in weight snapshot");
    const Precision p = flag ? Precision::Single : Precision::Double;
    WeightMatrix w(cues, outcomes, p);
    if (p == Precision::Single) {
        for (float& v : w.values_f32())
            v = std::bit_cast<float>(static_cast<std::uint32_t>(get_bytes_le(in, 4)));
    } else {
        for (double& v : w.values_f64()) v = std::bit_cast<double>(get_bytes_le(in, 8));
    }
    return w;
}

void write_trace_tsv(std::ostream& out, const WeightTrace& trace,
                     std::span<const std::string> cue_labels,
                     std::span<const std::string> outcome_labels) {
    out << "event_index\tcue\toutcome\tweight\n";
    for (std::size_t s = 0; s < trace.watched.size(); ++s) {
        const auto [cue, outcome] = trace.watched[s];
        const std::string cue_label =
            cue < cue_labels.size() ? cue_labels[cue] : std::to_string(cue);
        const std::string outcome_label =
            outcome < outcome_labels.size() ? outcome_labels[outcome] : std::to_string(outcome);
        for (const auto& rec : trace.series[s])
            out << rec.event << '\t' << cue_label << '\t' << outcome_label << '\t'
                << g17(rec.weight) << '\n';
    }
}

}  // namespace wh

#include "qwalk/evolution.hpp"

#include <ostream>

#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

void MomentSeries::write_csv(std::ostream& out) const {
    out << "n,m1,m2,sigma\n";
    for (const auto& r : records) {
        out << r.step << ',' << csv::format(r.m1) << ',' << csv::format(r.m2) << ','
            << csv::format(r.sigma) << '\n';
    }
}

void advance(WalkerState& state, const CoinSchedule& schedule) {
    const auto [c, s] = schedule.cos_sin_at(state.step());
    state.advance(c, s);
}

WalkerState step(WalkerState state, const CoinSchedule& schedule) {
    advance(state, schedule);
    return state;
}

EvolutionResult evolve(WalkerState initial, const CoinSchedule& schedule, std::int64_t n_max,
                       const EvolveOptions& options) {
    if (n_max < initial.step()) {
        throw DomainError("n_max (" + std::to_string(n_max) + ") is before the initial step (" +
                          std::to_string(initial.step()) + ")");
    }
    if (options.record_every < 1) throw DomainError("record_every must be >= 1");
    if (const auto last = schedule.last_step(); last >= 0 && last < n_max - 1) {
        throw ScheduleExhausted("schedule " + schedule.descriptor() + " ends at step " +
                                std::to_string(last) + ", evolution to " +
                                std::to_string(n_max) + " needs " + std::to_string(n_max - 1));
    }

    EvolutionResult result{MomentSeries{{}, schedule.descriptor()}, std::move(initial)};
    WalkerState& state = result.final_state;
    auto record = [&] { result.series.records.push_back(moments(probability(state))); };

    if (state.step() % options.record_every == 0 || state.step() == n_max) record();
    while (state.step() < n_max) {
        if (state.size() + 2 > options.max_sites) {
            throw CapacityError("lattice window would exceed " +
                                std::to_string(options.max_sites) + " sites at step " +
                                std::to_string(state.step() + 1));
        }
        advance(state, schedule);
        if (options.trim_zero_edges) state.trim_zero_edges();
        if (state.step() % options.record_every == 0 || state.step() == n_max) record();
    }
    return result;
}

Distribution snapshot_distribution(WalkerState initial, const CoinSchedule& schedule,
                                   std::int64_t n_target, const EvolveOptions& options) {
    EvolveOptions opts = options;
    opts.record_every = n_target > 0 ? n_target : 1;
    return probability(evolve(std::move(initial), schedule, n_target, opts).final_state);
}

}  // namespace qwalk

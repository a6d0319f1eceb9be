#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk {

struct MomentSeries {
    std::vector<MomentRecord> records;
    std::string schedule;

    /// Header `n,m1,m2,sigma`, one row per record, 17 significant digits.
    void write_csv(std::ostream& out) const;
};

struct EvolveOptions {
    std::int64_t record_every = 10;
    // Guard against runaway windows; counted in lattice sites.
    std::size_t max_sites = 2'000'000;
    // Drop exactly-zero edge sites after each step. Does not change any
    // amplitude, only the stored window.
    bool trim_zero_edges = true;
};

struct EvolutionResult {
    MomentSeries series;
    WalkerState final_state;
};

/// Applies one step of the map in place, with theta = schedule.theta_at(state.step()).
void advance(WalkerState& state, const CoinSchedule& schedule);

/// Value form of `advance`.
WalkerState step(WalkerState state, const CoinSchedule& schedule);

/// Runs the map from `initial` up to step `n_max`, recording moments whenever
/// the step counter is a multiple of `record_every`, and always at `n_max`.
EvolutionResult evolve(WalkerState initial, const CoinSchedule& schedule, std::int64_t n_max,
                       const EvolveOptions& options = {});

/// Probability distribution after evolving `initial` to step `n_target`.
Distribution snapshot_distribution(WalkerState initial, const CoinSchedule& schedule,
                                   std::int64_t n_target, const EvolveOptions& options = {});

}  // namespace qwalk

#include "qwalk/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

constexpr double kNormTolerance = 1e-12;
constexpr double kVarianceFloor = 1e-12;

}  // namespace

WalkerState::WalkerState(Site k_min, std::vector<Amplitude> upper, std::vector<Amplitude> lower,
                         std::int64_t step)
    : k_min_(k_min), step_(step), upper_(std::move(upper)), lower_(std::move(lower)) {}

WalkerState WalkerState::localized(Site site, Amplitude upper, Amplitude lower) {
    const double n = std::norm(upper) + std::norm(lower);
    if (!(std::abs(n - 1.0) <= kNormTolerance)) {
        throw NormalizationError("initial chirality has |a|^2 + |b|^2 = " + csv::format(n) +
                                 ", expected 1");
    }
    return WalkerState(site, {upper}, {lower}, 1);
}

WalkerState WalkerState::from_amplitudes(Site k_min, std::vector<Amplitude> upper,
                                         std::vector<Amplitude> lower, std::int64_t step,
                                         double tolerance) {
    if (upper.size() != lower.size() || upper.empty()) {
        throw DomainError("amplitude components must be non-empty and of equal length");
    }
    if (step < 1) {
        throw DomainError("step counter must be >= 1");
    }
    WalkerState state(k_min, std::move(upper), std::move(lower), step);
    const double n = state.norm();
    if (!(std::abs(n - 1.0) <= tolerance)) {
        throw NormalizationError("amplitudes have norm " + csv::format(n) + ", expected 1");
    }
    return state;
}

Amplitude WalkerState::upper_at(Site k) const noexcept {
    if (k < k_min_ || k > k_max()) return {};
    return upper_[static_cast<std::size_t>(k - k_min_)];
}

Amplitude WalkerState::lower_at(Site k) const noexcept {
    if (k < k_min_ || k > k_max()) return {};
    return lower_[static_cast<std::size_t>(k - k_min_)];
}

double WalkerState::norm() const noexcept {
    double total = 0.0;
    for (std::size_t i = 0; i < upper_.size(); ++i) {
        total += std::norm(upper_[i]) + std::norm(lower_[i]);
    }
    return total;
}

void WalkerState::advance(double c, double s) {
    const std::size_t n = upper_.size();
    // New window starts one site to the left. With j the new index and i the
    // old one: a'[j] reads old site k'+1, i.e. i = j; b'[j] reads k'-1, i = j - 2.
    scratch_upper_.assign(n + 2, Amplitude{});
    scratch_lower_.assign(n + 2, Amplitude{});
    for (std::size_t i = 0; i < n; ++i) {
        const Amplitude a = upper_[i];
        const Amplitude b = lower_[i];
        scratch_upper_[i] = a * c + b * s;
        scratch_lower_[i + 2] = a * s - b * c;
    }
    upper_.swap(scratch_upper_);
    lower_.swap(scratch_lower_);
    --k_min_;
    ++step_;
}

void WalkerState::retreat(double c, double s) {
    const std::size_t n = upper_.size();
    if (n < 3) {
        throw DomainError("cannot invert a step on a window narrower than three sites");
    }
    // The coin is a real symmetric involution: [a; b] = [[c, s], [s, -c]] [a'_{k-1}; b'_{k+1}].
    scratch_upper_.assign(n - 2, Amplitude{});
    scratch_lower_.assign(n - 2, Amplitude{});
    for (std::size_t i = 0; i + 2 < n; ++i) {
        const Amplitude ap = upper_[i];
        const Amplitude bp = lower_[i + 2];
        scratch_upper_[i] = ap * c + bp * s;
        scratch_lower_[i] = ap * s - bp * c;
    }
    upper_.swap(scratch_upper_);
    lower_.swap(scratch_lower_);
    ++k_min_;
    --step_;
}

void WalkerState::trim_zero_edges() {
    auto is_zero = [this](std::size_t i) {
        return upper_[i] == Amplitude{} && lower_[i] == Amplitude{};
    };
    std::size_t hi = upper_.size();
    while (hi > 1 && is_zero(hi - 1)) --hi;
    std::size_t lo = 0;
    while (lo + 1 < hi && is_zero(lo)) ++lo;
    if (lo == 0 && hi == upper_.size()) return;
    upper_.erase(upper_.begin() + static_cast<std::ptrdiff_t>(hi), upper_.end());
    lower_.erase(lower_.begin() + static_cast<std::ptrdiff_t>(hi), lower_.end());
    upper_.erase(upper_.begin(), upper_.begin() + static_cast<std::ptrdiff_t>(lo));
    lower_.erase(lower_.begin(), lower_.begin() + static_cast<std::ptrdiff_t>(lo));
    k_min_ += static_cast<Site>(lo);
}

double Distribution::at(Site k) const noexcept {
    if (k < k_min || k > k_max()) return 0.0;
    return probs[static_cast<std::size_t>(k - k_min)];
}

double Distribution::total() const noexcept {
    double t = 0.0;
    for (double p : probs) t += p;
    return t;
}

Site Distribution::support_edge(double threshold) const noexcept {
    Site edge = -1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > threshold) {
            edge = std::max(edge, std::abs(k_min + static_cast<Site>(i)));
        }
    }
    return edge;
}

void Distribution::write_csv(std::ostream& out) const {
    out << "k,p\n";
    for (std::size_t i = 0; i < probs.size(); ++i) {
        out << (k_min + static_cast<Site>(i)) << ',' << csv::format(probs[i]) << '\n';
    }
}

Distribution probability(const WalkerState& state) {
    Distribution dist;
    dist.k_min = state.k_min();
    dist.step = state.step();
    const auto up = state.upper();
    const auto lo = state.lower();
    dist.probs.resize(up.size());
    for (std::size_t i = 0; i < up.size(); ++i) {
        dist.probs[i] = std::norm(up[i]) + std::norm(lo[i]);
    }
    return dist;
}

double clamped_sigma(double m1, double m2) {
    const double variance = m2 - m1 * m1;
    if (variance >= 0.0) return std::sqrt(variance);
    if (variance >= -kVarianceFloor * std::max(1.0, std::abs(m2))) return 0.0;
    throw ConsistencyError("negative variance " + csv::format(variance) + " (m1 = " +
                           csv::format(m1) + ", m2 = " + csv::format(m2) + ")");
}

MomentRecord moments(const Distribution& dist) {
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        const auto k = static_cast<double>(dist.k_min + static_cast<Site>(i));
        const double kp = k * dist.probs[i];
        m1 += kp;
        m2 += k * kp;
    }
    return {dist.step, m1, m2, clamped_sigma(m1, m2)};
}

}  // namespace qwalk

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qwalk {

using Site = std::int64_t;
using Amplitude = std::complex<double>;

/// Spinor wave function of the walker on the integer line.
///
/// Amplitudes are stored densely over the window [k_min, k_max]; every site
/// outside the window has exactly zero amplitude. The upper component is the
/// left chirality (a_k), the lower one the right chirality (b_k). `step()` is
/// the discrete time n, with the walker created at n = 1.
class WalkerState {
public:
    /// Delta at `site` with chirality (upper, lower). Throws NormalizationError
    /// unless |upper|^2 + |lower|^2 = 1 within 1e-12.
    static WalkerState localized(Site site, Amplitude upper, Amplitude lower);

    /// Adopts explicit amplitudes starting at `k_min`. The norm must be one
    /// within `tolerance`.
    static WalkerState from_amplitudes(Site k_min, std::vector<Amplitude> upper,
                                       std::vector<Amplitude> lower, std::int64_t step,
                                       double tolerance = 1e-12);

    std::int64_t step() const noexcept { return step_; }
    Site k_min() const noexcept { return k_min_; }
    Site k_max() const noexcept { return k_min_ + static_cast<Site>(upper_.size()) - 1; }
    std::size_t size() const noexcept { return upper_.size(); }

    std::span<const Amplitude> upper() const noexcept { return upper_; }
    std::span<const Amplitude> lower() const noexcept { return lower_; }

    // Zero outside the window.
    Amplitude upper_at(Site k) const noexcept;
    Amplitude lower_at(Site k) const noexcept;

    double norm() const noexcept;

    /// One application of the coin-then-shift map with the given coin angle:
    ///   a'_k = a_{k+1} cos + b_{k+1} sin,   b'_k = a_{k-1} sin - b_{k-1} cos.
    /// The window grows by one site per side and the step counter advances.
    void advance(double cos_theta, double sin_theta);

    /// Exact inverse of `advance` for the same angle. The window shrinks by
    /// one site per side; only meaningful when the edge amplitudes the inverse
    /// would read from outside the window are zero.
    void retreat(double cos_theta, double sin_theta);

    /// Drops edge sites whose amplitudes are exactly zero. Keeps at least one site.
    void trim_zero_edges();

private:
    WalkerState(Site k_min, std::vector<Amplitude> upper, std::vector<Amplitude> lower,
                std::int64_t step);

    Site k_min_ = 0;
    std::int64_t step_ = 1;
    std::vector<Amplitude> upper_;
    std::vector<Amplitude> lower_;
    // Double buffers reused across steps.
    std::vector<Amplitude> scratch_upper_;
    std::vector<Amplitude> scratch_lower_;
};

/// Position probabilities P_k over a contiguous window, taken at `step`.
struct Distribution {
    Site k_min = 0;
    std::int64_t step = 1;
    std::vector<double> probs;

    Site k_max() const noexcept { return k_min + static_cast<Site>(probs.size()) - 1; }
    double at(Site k) const noexcept;
    double total() const noexcept;

    /// Largest |k| with P_k > threshold, or -1 when no site exceeds it.
    Site support_edge(double threshold) const noexcept;

    /// CSV with header `k,p`, ascending k, 17 significant digits.
    void write_csv(std::ostream& out) const;
};

struct MomentRecord {
    std::int64_t step = 0;
    double m1 = 0.0;
    double m2 = 0.0;
    double sigma = 0.0;

    friend bool operator==(const MomentRecord&, const MomentRecord&) = default;
};

Distribution probability(const WalkerState& state);

/// m1 = sum k P_k, m2 = sum k^2 P_k, sigma = sqrt(m2 - m1^2). A negative
/// variance inside the rounding floor is clamped to zero; anything below it
/// throws ConsistencyError.
MomentRecord moments(const Distribution& dist);

/// sqrt(m2 - m1^2) with the variance clamp shared by every moment computation.
/// The noise floor is 1e-12 relative to max(1, m2).
double clamped_sigma(double m1, double m2);

}  // namespace qwalk

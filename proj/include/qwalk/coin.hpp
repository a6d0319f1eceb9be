#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace qwalk {

/// Deterministic coin angle sequence n -> theta_n, with n >= 1 the discrete
/// time (t = (n - 1) tau, tau = 1).
class CoinSchedule {
public:
    struct Constant {
        double theta;
    };
    /// cos(theta_n) = n^(-alpha) / sqrt(2), theta_n in [pi/4, pi/2).
    struct PowerLaw {
        double alpha;
    };
    /// theta_n = 2 pi gamma (n - 1), reduced modulo 2 pi.
    struct Linear {
        double gamma;
    };
    /// theta_n = angles[n - 1].
    struct Table {
        std::vector<double> angles;
    };
    using Kind = std::variant<Constant, PowerLaw, Linear, Table>;

    static CoinSchedule constant(double theta);
    static CoinSchedule hadamard();
    static CoinSchedule power_law(double alpha);
    static CoinSchedule linear(double gamma);
    static CoinSchedule table(std::vector<double> angles);
    /// One angle (radians) per line; a non-numeric first line is taken as a header.
    static CoinSchedule table_from_csv(const std::filesystem::path& path);

    const Kind& kind() const noexcept { return kind_; }

    double theta_at(std::int64_t n) const;

    struct Trig {
        double cos;
        double sin;
    };
    /// (cos theta_n, sin theta_n). For PowerLaw the cosine is exact from the
    /// schedule and sin = +sqrt(1 - cos^2).
    Trig cos_sin_at(std::int64_t n) const;

    /// Last step the schedule defines, or -1 when unbounded.
    std::int64_t last_step() const noexcept;

    /// Short tag for file names and series headers, e.g. "powerlaw(alpha=0.3)".
    std::string descriptor() const;

private:
    explicit CoinSchedule(Kind kind) : kind_(std::move(kind)) {}

    Kind kind_;
};

}  // namespace qwalk

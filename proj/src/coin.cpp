#include "qwalk/coin.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

#include "qwalk/csv.hpp"
#include "qwalk/error.hpp"

namespace qwalk {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_step(std::int64_t n) {
    if (n < 1) throw DomainError("coin schedule step must be >= 1, got " + std::to_string(n));
}

double power_law_cos(double alpha, std::int64_t n) {
    return std::numbers::sqrt2 / 2.0 * std::pow(static_cast<double>(n), -alpha);
}

double linear_theta(double gamma, std::int64_t n) {
    // Reduce the turn count before scaling so the angle stays exact-ish at large n.
    const double turns = gamma * static_cast<double>(n - 1);
    const double frac = turns - std::floor(turns);
    return 2.0 * std::numbers::pi * frac;
}

const std::vector<double>& checked_table(const CoinSchedule::Table& t, std::int64_t n) {
    if (n > static_cast<std::int64_t>(t.angles.size())) {
        throw ScheduleExhausted("table schedule has " + std::to_string(t.angles.size()) +
                                " angles, step " + std::to_string(n) + " requested");
    }
    return t.angles;
}

}  // namespace

CoinSchedule CoinSchedule::constant(double theta) {
    if (!std::isfinite(theta)) throw DomainError("constant coin angle must be finite");
    return CoinSchedule(Constant{theta});
}

CoinSchedule CoinSchedule::hadamard() {
    return constant(std::numbers::pi / 4.0);
}

CoinSchedule CoinSchedule::power_law(double alpha) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
        throw DomainError("power-law exponent alpha must be finite and >= 0");
    }
    return CoinSchedule(PowerLaw{alpha});
}

CoinSchedule CoinSchedule::linear(double gamma) {
    if (!std::isfinite(gamma)) throw DomainError("linear coin rate gamma must be finite");
    return CoinSchedule(Linear{gamma});
}

CoinSchedule CoinSchedule::table(std::vector<double> angles) {
    for (double a : angles) {
        if (!std::isfinite(a)) throw DomainError("table coin angles must be finite");
    }
    return CoinSchedule(Table{std::move(angles)});
}

CoinSchedule CoinSchedule::table_from_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open coin table " + path.string());
    std::vector<double> angles;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        const auto first = line.find_first_not_of(' ');
        if (first == std::string::npos) continue;
        double value = 0.0;
        const char* begin = line.data() + first;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            if (line_no == 1) continue;  // header
            throw ConfigError(path.string() + ":" + std::to_string(line_no) +
                              ": not a number: '" + line + "'");
        }
        angles.push_back(value);
    }
    if (angles.empty()) throw ConfigError(path.string() + ": coin table is empty");
    return table(std::move(angles));
}

double CoinSchedule::theta_at(std::int64_t n) const {
    check_step(n);
    return std::visit(
        overloaded{
            [](const Constant& c) { return c.theta; },
            [n](const PowerLaw& p) { return std::acos(power_law_cos(p.alpha, n)); },
            [n](const Linear& l) { return linear_theta(l.gamma, n); },
            [n](const Table& t) { return checked_table(t, n)[static_cast<std::size_t>(n - 1)]; },
        },
        kind_);
}

CoinSchedule::Trig CoinSchedule::cos_sin_at(std::int64_t n) const {
    check_step(n);
    if (const auto* p = std::get_if<PowerLaw>(&kind_)) {
        const double c = power_law_cos(p->alpha, n);
        return {c, std::sqrt((1.0 - c) * (1.0 + c))};
    }
    const double theta = theta_at(n);
    return {std::cos(theta), std::sin(theta)};
}

std::int64_t CoinSchedule::last_step() const noexcept {
    if (const auto* t = std::get_if<Table>(&kind_)) {
        return static_cast<std::int64_t>(t->angles.size());
    }
    return -1;
}

std::string CoinSchedule::descriptor() const {
    return std::visit(
        overloaded{
            [](const Constant& c) { return "constant(theta=" + csv::shortest(c.theta) + ")"; },
            [](const PowerLaw& p) { return "powerlaw(alpha=" + csv::shortest(p.alpha) + ")"; },
            [](const Linear& l) { return "linear(gamma=" + csv::shortest(l.gamma) + ")"; },
            [](const Table& t) { return "table(" + std::to_string(t.angles.size()) + ")"; },
        },
        kind_);
}

}  // namespace qwalk

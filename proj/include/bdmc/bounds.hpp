#ifndef BDMC_BOUNDS_HPP
#define BDMC_BOUNDS_HPP

// Inequalities between the symmetric capacity I and the Bhattacharyya
// parameter Z of a binary-input channel, and their restatement for a pair of
// distributions (P, Q) via the identification W(.|0) = P, W(.|1) = Q:
//
//   Z >= 1 - I >= phi(Z)               (tight for BEC / BSC respectively)
//   I + Z >= 1,  I + phi(Z) <= 1,  I + Z^2 <= 1,  I ln 2 + Z <= 1
//   Hl^2 <= JS <= Hl^2 min(log2 e, 2 - Hl^2),    Hl^2 = 1 - Z, JS = I

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdmc/channel.hpp"
#include "bdmc/errors.hpp"
#include "bdmc/scalar_fn.hpp"

namespace bdmc {

inline constexpr double default_bound_tol = 1e-9;

struct Tolerances {
    double satisfy = default_bound_tol;  // satisfied iff slack >= -satisfy
    double tight = default_bound_tol;    // tight iff |slack| <= tight
};

/// One inequality lhs (op) rhs, with slack oriented so that slack >= 0 means
/// the inequality holds.
struct BoundEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool satisfied = false;
    bool tight = false;
};

struct BoundReport {
    double capacity = 0.0;       // I(W)
    double bhattacharyya = 0.0;  // Z(W)
    std::vector<BoundEntry> entries;
    ChannelClass channel_class;
    Tolerances tol;

    [[nodiscard]] bool all_satisfied() const
    {
        return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.satisfied; });
    }

    [[nodiscard]] const BoundEntry& entry(const std::string& name) const
    {
        for (const BoundEntry& e : entries) {
            if (e.name == name) {
                return e;
            }
        }
        throw std::out_of_range("no bound entry named " + name);
    }
};

namespace detail {

enum class Direction { GreaterEqual, LessEqual };

inline BoundEntry make_entry(std::string name, double lhs, double rhs, Direction dir, const Tolerances& tol)
{
    BoundEntry e{std::move(name), lhs, rhs, 0.0, false, false};
    e.slack = dir == Direction::GreaterEqual ? lhs - rhs : rhs - lhs;
    e.satisfied = e.slack >= -tol.satisfy;
    e.tight = std::abs(e.slack) <= tol.tight;
    return e;
}

}  // namespace detail

/// Evaluates the theorem and its four corollaries from one (I, Z) pair.
inline BoundReport bound_report(const Channel& ch, Tolerances tol)
{
    if (!(tol.satisfy > 0.0) || !(tol.tight > 0.0)) {
        throw domain_error("bound_report: tolerances must be positive");
    }
    using detail::Direction;
    const double i = capacity(ch);
    const double z = bhattacharyya(ch);
    const double phi_z = phi(z);

    BoundReport r;
    r.capacity = i;
    r.bhattacharyya = z;
    r.tol = tol;
    r.channel_class = classify(ch);
    r.entries = {
        detail::make_entry("theorem.left", z, 1.0 - i, Direction::GreaterEqual, tol),
        detail::make_entry("theorem.right", 1.0 - i, phi_z, Direction::GreaterEqual, tol),
        detail::make_entry("corollary.1", i + z, 1.0, Direction::GreaterEqual, tol),
        detail::make_entry("corollary.2", i + phi_z, 1.0, Direction::LessEqual, tol),
        detail::make_entry("corollary.3", i + z * z, 1.0, Direction::LessEqual, tol),
        detail::make_entry("corollary.4", i * std::numbers::ln2 + z, 1.0, Direction::LessEqual, tol),
    };
    return r;
}

inline BoundReport bound_report(const Channel& ch, double tol = default_bound_tol)
{
    return bound_report(ch, Tolerances{tol, tol});
}

/// Finite distribution with labelled masses.
class Distribution {
public:
    struct Mass {
        std::string label;
        double p = 0.0;
    };

    explicit Distribution(std::vector<Mass> masses) : masses_(std::move(masses))
    {
        if (masses_.empty()) {
            throw invalid_distribution("distribution has no labels");
        }
        double total = 0.0;
        for (const Mass& m : masses_) {
            if (!std::isfinite(m.p) || m.p < 0.0) {
                throw invalid_distribution("distribution mass for '" + m.label + "' is negative or not finite");
            }
            total += m.p;
        }
        if (std::abs(total - 1.0) > row_sum_tol) {
            throw invalid_distribution("distribution sums to " + detail::format_number(total));
        }
    }

    /// Unlabelled masses get labels "0", "1", ...
    static Distribution from_masses(const std::vector<double>& ps)
    {
        std::vector<Mass> masses;
        masses.reserve(ps.size());
        for (std::size_t i = 0; i < ps.size(); ++i) {
            masses.push_back({std::to_string(i), ps[i]});
        }
        return Distribution(std::move(masses));
    }

    [[nodiscard]] const std::vector<Mass>& masses() const noexcept { return masses_; }

private:
    std::vector<Mass> masses_;
};

/// The channel with W(.|0) = p and W(.|1) = q over the union of labels
/// (missing labels carry mass 0).
inline Channel identify_channel(const Distribution& p, const Distribution& q)
{
    std::map<std::string, std::pair<double, double>> joint;
    std::vector<std::string> order;
    auto add = [&](const Distribution& d, bool second) {
        for (const auto& m : d.masses()) {
            auto [it, inserted] = joint.try_emplace(m.label, 0.0, 0.0);
            if (inserted) {
                order.push_back(m.label);
            }
            (second ? it->second.second : it->second.first) += m.p;
        }
    };
    add(p, false);
    add(q, true);

    std::vector<ChannelRow> rows;
    rows.reserve(order.size());
    for (const std::string& label : order) {
        const auto& [a, b] = joint.at(label);
        rows.push_back({label, a, b});
    }
    return make_channel(std::move(rows));
}

/// Squared Hellinger distance 1 - sum sqrt(p q).
inline double hellinger_sq(const Distribution& p, const Distribution& q)
{
    return detail::clamp01(1.0 - bhattacharyya(identify_channel(p, q)));
}

/// Jensen-Shannon divergence in bits.
inline double jensen_shannon(const Distribution& p, const Distribution& q)
{
    return capacity(identify_channel(p, q));
}

struct PropositionReport {
    double hellinger_sq = 0.0;
    double jensen_shannon = 0.0;
    double upper_bound = 0.0;  // Hl^2 min(log2 e, 2 - Hl^2)
    double lower_slack = 0.0;  // JS - Hl^2
    double upper_slack = 0.0;  // upper_bound - JS
    bool lower_satisfied = false;
    bool upper_satisfied = false;

    [[nodiscard]] bool satisfied() const noexcept { return lower_satisfied && upper_satisfied; }
};

inline PropositionReport check_proposition(const Distribution& p, const Distribution& q,
                                           double tol = default_bound_tol)
{
    const Channel ch = identify_channel(p, q);
    PropositionReport r;
    r.hellinger_sq = detail::clamp01(1.0 - bhattacharyya(ch));
    r.jensen_shannon = capacity(ch);
    r.upper_bound = r.hellinger_sq * std::min(log2e, 2.0 - r.hellinger_sq);
    r.lower_slack = r.jensen_shannon - r.hellinger_sq;
    r.upper_slack = r.upper_bound - r.jensen_shannon;
    r.lower_satisfied = r.lower_slack >= -tol;
    r.upper_satisfied = r.upper_slack >= -tol;
    return r;
}

struct RegionPoint {
    double z = 0.0;
    double one_minus_i = 0.0;
};

inline constexpr double region_tol = 1e-9;

/// Per-sample seed: splitmix64 of (seed, index), so every sample depends
/// only on its own index.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) noexcept
{
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline void verify_region_point(const RegionPoint& pt)
{
    if (pt.one_minus_i > pt.z + region_tol || pt.one_minus_i < phi(pt.z) - region_tol) {
        std::ostringstream os;
        os.precision(17);
        os << "region violation at z = " << pt.z << ", 1 - I = " << pt.one_minus_i;
        throw bound_violation(os.str());
    }
}

/// Monte-Carlo cloud of (Z, 1 - I) over random channels. With bec_grid > 0,
/// points of bec(k / (bec_grid - 1)) are appended. Throws bound_violation if
/// any point leaves phi(z) <= 1 - I <= z.
inline std::vector<RegionPoint> region_sample(std::size_t num_samples, std::size_t num_outputs,
                                              std::uint64_t seed, std::size_t bec_grid = 0)
{
    if (num_samples < 1) {
        throw domain_error("region_sample: need at least one sample");
    }
    if (num_outputs < 2) {
        throw domain_error("region_sample: need at least two outputs");
    }
    std::vector<RegionPoint> points;
    points.reserve(num_samples + bec_grid);
    for (std::size_t k = 0; k < num_samples; ++k) {
        const Channel ch = random_channel(num_outputs, sample_seed(seed, k));
        points.push_back({bhattacharyya(ch), 1.0 - capacity(ch)});
    }
    for (std::size_t k = 0; k < bec_grid; ++k) {
        const double eps = bec_grid == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(bec_grid - 1);
        const Channel ch = bec(eps);
        points.push_back({bhattacharyya(ch), 1.0 - capacity(ch)});
    }
    for (const RegionPoint& pt : points) {
        verify_region_point(pt);
    }
    return points;
}

}  // namespace bdmc

#endif  // BDMC_BOUNDS_HPP

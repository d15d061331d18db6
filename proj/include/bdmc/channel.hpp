#ifndef BDMC_CHANNEL_HPP
#define BDMC_CHANNEL_HPP

// Binary-input discrete memoryless channels over a finite output alphabet.
//
// A channel is stored as rows (label, W(y|0), W(y|1)). The output law under
// uniform input is p(y) = (W(y|0) + W(y|1)) / 2 and the posterior of input 0
// is Q(y) = W(y|0) / (W(y|0) + W(y|1)). With U = bh(Q):
//
//   Z(W)     = E[U]
//   1 - I(W) = E[ent(Q)] = E[phi(U)]

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bdmc/errors.hpp"
#include "bdmc/scalar_fn.hpp"

namespace bdmc {

inline constexpr double row_sum_tol = 1e-9;
inline constexpr double default_merge_tol = 1e-12;
inline constexpr double default_classify_tol = 1e-9;

struct ChannelRow {
    std::string label;
    double w0 = 0.0;  // W(y|0)
    double w1 = 0.0;  // W(y|1)
};

class Channel;
Channel make_channel(std::vector<ChannelRow> rows, bool strict = false);

/// Immutable, validated channel. Build through make_channel or the
/// constructors bec/bsc/random_channel.
class Channel {
public:
    [[nodiscard]] const std::vector<ChannelRow>& outputs() const noexcept { return outputs_; }
    [[nodiscard]] std::size_t size() const noexcept { return outputs_.size(); }

    /// Messages about rows pruned or renamed during construction.
    [[nodiscard]] const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

private:
    friend Channel make_channel(std::vector<ChannelRow> rows, bool strict);
    Channel() = default;

    std::vector<ChannelRow> outputs_;
    std::vector<std::string> diagnostics_;
};

namespace detail {

inline std::string row_name(std::size_t index, const std::string& label)
{
    std::ostringstream os;
    os << "row " << index + 1 << " ('" << label << "')";
    return os.str();
}

inline std::string format_number(double x)
{
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace detail

/// Validates rows and builds a channel.
///
/// Probabilities must be finite and nonnegative; each input's row must sum
/// to 1 within row_sum_tol (it is then renormalized). Outputs with
/// W(y|0) + W(y|1) == 0 are an error when `strict`, otherwise dropped with a
/// diagnostic. Duplicate labels get a "#k" suffix.
inline Channel make_channel(std::vector<ChannelRow> rows, bool strict)
{
    if (rows.empty()) {
        throw invalid_channel("channel has no outputs");
    }

    double sum0 = 0.0;
    double sum1 = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ChannelRow& r = rows[i];
        for (const auto& [name, w] : {std::pair{"w0", r.w0}, std::pair{"w1", r.w1}}) {
            if (!std::isfinite(w)) {
                throw invalid_channel(detail::row_name(i, r.label) + ": " + name + " is not a finite number");
            }
            if (w < 0.0) {
                throw invalid_channel(detail::row_name(i, r.label) + ": negative " + name + " = " +
                                      detail::format_number(w));
            }
        }
        sum0 += r.w0;
        sum1 += r.w1;
    }
    if (std::abs(sum0 - 1.0) > row_sum_tol) {
        throw invalid_channel("input-0 row sums to " + detail::format_number(sum0));
    }
    if (std::abs(sum1 - 1.0) > row_sum_tol) {
        throw invalid_channel("input-1 row sums to " + detail::format_number(sum1));
    }

    // Sums off by no more than summation round-off are left alone so that
    // re-validating an already normalized channel is the identity.
    const double noise = static_cast<double>(rows.size()) * std::numeric_limits<double>::epsilon();
    const bool rescale0 = std::abs(sum0 - 1.0) > noise;
    const bool rescale1 = std::abs(sum1 - 1.0) > noise;

    Channel ch;
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ChannelRow r = std::move(rows[i]);
        if (r.w0 + r.w1 == 0.0) {
            if (strict) {
                throw invalid_channel(detail::row_name(i, r.label) + ": degenerate output (w0 = w1 = 0)");
            }
            ch.diagnostics_.push_back("pruned degenerate " + detail::row_name(i, r.label));
            continue;
        }
        if (rescale0) {
            r.w0 /= sum0;
        }
        if (rescale1) {
            r.w1 /= sum1;
        }
        int& count = seen[r.label];
        if (++count > 1) {
            std::string renamed = r.label + "#" + std::to_string(count);
            while (seen.contains(renamed)) {
                renamed = r.label + "#" + std::to_string(++count);
            }
            seen[renamed] = 1;
            ch.diagnostics_.push_back("renamed duplicate label '" + r.label + "' to '" + renamed + "'");
            r.label = std::move(renamed);
        }
        ch.outputs_.push_back(std::move(r));
    }
    if (ch.outputs_.empty()) {
        throw invalid_channel("channel has no outputs after pruning");
    }
    return ch;
}

/// Binary erasure channel with outputs {0, e, 1}. Outputs with zero
/// probability (the erasure at eps = 0, the hard outputs at eps = 1) are
/// omitted.
inline Channel bec(UnitScalar eps)
{
    const double e = eps.value();
    return make_channel({{"0", 1.0 - e, 0.0}, {"e", e, e}, {"1", 0.0, 1.0 - e}});
}

/// Binary symmetric channel with crossover eps in [0, 1/2].
inline Channel bsc(double eps)
{
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw domain_error("bsc: crossover probability must lie in [0, 1/2]");
    }
    return make_channel({{"0", 1.0 - eps, eps}, {"1", eps, 1.0 - eps}});
}

/// Crossover eps in [0, 1/2] with 1 - ent(eps) == target, by bisection
/// (ent is increasing on [0, 1/2]).
inline double bsc_crossover_for_capacity(UnitScalar target)
{
    const double c = target.value();
    if (c == 0.0) {
        return 0.5;
    }
    if (c == 1.0) {
        return 0.0;
    }
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - ent(mid) > c) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace detail {

// Standard exponential variate from the top 53 bits of one 64-bit draw.
// Avoids std::exponential_distribution, whose output differs between
// standard library implementations.
inline double exponential_variate(std::mt19937_64& rng)
{
    const double unit = static_cast<double>(rng() >> 11) * 0x1p-53;  // [0, 1)
    return -std::log1p(-unit);
}

}  // namespace detail

/// Random channel whose two conditional rows are independent uniform draws
/// from the probability simplex. Deterministic in `seed`.
inline Channel random_channel(std::size_t num_outputs, std::uint64_t seed)
{
    if (num_outputs < 2) {
        throw domain_error("random_channel: need at least two outputs");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> w0(num_outputs);
    std::vector<double> w1(num_outputs);
    for (auto* row : {&w0, &w1}) {
        double total = 0.0;
        for (double& w : *row) {
            w = detail::exponential_variate(rng);
            total += w;
        }
        for (double& w : *row) {
            w /= total;
        }
    }
    std::vector<ChannelRow> rows;
    rows.reserve(num_outputs);
    for (std::size_t i = 0; i < num_outputs; ++i) {
        rows.push_back({"y" + std::to_string(i), w0[i], w1[i]});
    }
    return make_channel(std::move(rows));
}

/// Symmetric capacity I(W) in bits, from the defining double sum.
inline double capacity(const Channel& ch)
{
    double total = 0.0;
    for (const ChannelRow& r : ch.outputs()) {
        const double mix = 0.5 * (r.w0 + r.w1);
        for (double w : {r.w0, r.w1}) {
            if (w > 0.0) {
                total += 0.5 * w * std::log2(w / mix);
            }
        }
    }
    return detail::clamp01(total);
}

/// Bhattacharyya parameter Z(W) = sum_y sqrt(W(y|0) W(y|1)).
inline double bhattacharyya(const Channel& ch)
{
    double total = 0.0;
    for (const ChannelRow& r : ch.outputs()) {
        total += std::sqrt(r.w0 * r.w1);
    }
    return detail::clamp01(total);
}

struct BlackwellAtom {
    double q = 0.0;  // posterior of input 0
    double p = 0.0;  // output probability mass
    double u = 0.0;  // bh(q)
};

/// Law of the posterior Q under the output distribution.
struct BlackwellMeasure {
    std::vector<BlackwellAtom> atoms;  // sorted by q

    /// E[f(Q)]
    template <typename F>
    [[nodiscard]] double expect_q(F&& f) const
    {
        double total = 0.0;
        for (const BlackwellAtom& a : atoms) {
            total += a.p * f(a.q);
        }
        return total;
    }

    [[nodiscard]] double mean_u() const
    {
        double total = 0.0;
        for (const BlackwellAtom& a : atoms) {
            total += a.p * a.u;
        }
        return total;
    }
};

/// Blackwell measure of a channel. Atoms whose q values are within
/// `merge_tol` of the running cluster are merged (masses summed, q averaged
/// by mass).
inline BlackwellMeasure blackwell(const Channel& ch, double merge_tol = default_merge_tol)
{
    if (!(merge_tol >= 0.0)) {
        throw domain_error("blackwell: merge tolerance must be nonnegative");
    }
    std::vector<BlackwellAtom> raw;
    raw.reserve(ch.size());
    for (const ChannelRow& r : ch.outputs()) {
        const double total = r.w0 + r.w1;
        raw.push_back({std::clamp(r.w0 / total, 0.0, 1.0), 0.5 * total, 0.0});
    }
    std::sort(raw.begin(), raw.end(), [](const BlackwellAtom& a, const BlackwellAtom& b) { return a.q < b.q; });

    BlackwellMeasure measure;
    for (const BlackwellAtom& a : raw) {
        if (!measure.atoms.empty() && a.q - measure.atoms.back().q <= merge_tol) {
            BlackwellAtom& last = measure.atoms.back();
            const double mass = last.p + a.p;
            last.q = (last.q * last.p + a.q * a.p) / mass;
            last.p = mass;
        } else {
            measure.atoms.push_back(a);
        }
    }
    for (BlackwellAtom& a : measure.atoms) {
        a.u = bh(a.q);
    }
    return measure;
}

enum class ChannelKind { BEC, BSC, General };

inline const char* to_string(ChannelKind kind)
{
    switch (kind) {
    case ChannelKind::BEC:
        return "BEC";
    case ChannelKind::BSC:
        return "BSC";
    case ChannelKind::General:
        return "General";
    }
    return "General";
}

struct ChannelClass {
    ChannelKind kind = ChannelKind::General;
    // erasure probability (BEC) or crossover in [0, 1/2] (BSC)
    std::optional<double> parameter;
};

/// Classifies a channel from its Blackwell measure.
///
/// BEC: every atom has u within tol of 0 or 1; the parameter is the mass on
/// u ~ 1. BSC: all atoms share one u within tol; the parameter is
/// bh_inv(E[U]). When both hold (noiseless or useless channels) BEC wins.
inline ChannelClass classify(const Channel& ch, double tol = default_classify_tol)
{
    const BlackwellMeasure m = blackwell(ch);

    bool erasure_like = true;
    double erased = 0.0;
    double u_min = 1.0;
    double u_max = 0.0;
    for (const BlackwellAtom& a : m.atoms) {
        const bool hard = a.u <= tol;
        const bool erasure = std::abs(a.u - 1.0) <= tol;
        erasure_like = erasure_like && (hard || erasure);
        if (erasure) {
            erased += a.p;
        }
        u_min = std::min(u_min, a.u);
        u_max = std::max(u_max, a.u);
    }
    if (erasure_like) {
        return {ChannelKind::BEC, detail::clamp01(erased)};
    }
    if (u_max - u_min <= tol) {
        return {ChannelKind::BSC, bh_inv(detail::clamp01(m.mean_u()))};
    }
    return {ChannelKind::General, std::nullopt};
}

}  // namespace bdmc

#endif  // BDMC_CHANNEL_HPP

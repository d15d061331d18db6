// Walks the BEC and BSC families across the (Z, 1 - I) region and prints
// where each sits relative to the two edges z and phi(z).

#include <cstdio>

#include "bdmc/bdmc.hpp"

int main()
{
    std::printf("%-6s %-6s %10s %10s %10s %10s\n", "kind", "eps", "Z", "1-I", "phi(Z)", "class");
    for (int k = 0; k <= 5; ++k) {
        const double eps = 0.1 * k;
        for (const bool erasure : {true, false}) {
            const bdmc::Channel ch = erasure ? bdmc::bec(2 * eps) : bdmc::bsc(eps);
            const double z = bdmc::bhattacharyya(ch);
            const double loss = 1.0 - bdmc::capacity(ch);
            std::printf("%-6s %-6.2f %10.6f %10.6f %10.6f %10s\n", erasure ? "bec" : "bsc", erasure ? 2 * eps : eps,
                        z, loss, bdmc::phi(z), bdmc::to_string(bdmc::classify(ch).kind));
        }
    }

    const bdmc::Channel mixed = bdmc::make_channel({{"a", 0.5, 0.1}, {"b", 0.3, 0.3}, {"c", 0.2, 0.6}});
    const bdmc::BoundReport report = bdmc::bound_report(mixed);
    std::printf("\nthree-output channel: I = %.6f, Z = %.6f\n", report.capacity, report.bhattacharyya);
    for (const bdmc::BoundEntry& e : report.entries) {
        std::printf("  %-14s slack %.3e%s\n", e.name.c_str(), e.slack, e.tight ? " (tight)" : "");
    }
    return report.all_satisfied() ? 0 : 2;
}

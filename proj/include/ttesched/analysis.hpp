#ifndef TTESCHED_ANALYSIS_HPP
#define TTESCHED_ANALYSIS_HPP

#include <cstdint>
#include <vector>

#include "ttesched/tecg.hpp"

// Schedulability predicates for fixed cyclic reservations on one link, and
// the per-flow feasible-solution counting method (per-packet path counts,
// multiplied for packet-level flexible scheduling). Pure functions.

namespace tte {

// The arithmetic progression of slots {origin + c*cycle | c >= 0} reserved by
// one flow on a link.
struct IndexSet {
    long long origin = 1;
    long long cycle = 1;
};

// True iff the two reservations must share a slot somewhere, which happens
// exactly when gcd(cycle_a, cycle_b) divides origin_a - origin_b.
bool collides(const IndexSet& a, const IndexSet& b);

// Slots within [1, horizon] that reserving `a` makes unusable for any flow of
// cycle `other_cycle` on the same link: {origin_a + c*gcd(cycle_a, other_cycle)}.
std::vector<long long> blocked_slots(const IndexSet& a, long long other_cycle, long long horizon);

// Counting guard: products above this bound raise "count overflow guard".
inline constexpr std::uint64_t kCountGuard = 1'000'000'000'000ULL;

// Number of feasible schedule-paths for one flow on the given TECG, following
// the per-packet counting method: Fcs counts the paths of packet 1's
// schedule-path graph, Hfs multiplies the per-packet counts. Requires
// max_delay <= cycle so packet lifespans do not overlap; max_delay > cycle is
// rejected because the multiplication method is undefined there.
std::uint64_t count_solutions(const Tecg& tecg, const FlowSpec& flow, Mode mode);

} // namespace tte

#endif

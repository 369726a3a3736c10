#pragma once

#include "gbas/network.hpp"

#include <span>

namespace gbas {

/// Names one side (or neither) of every unit boundary at a layer.
/// entries[i] = 0 imposes no constraint; +1/-1 select the closed
/// halfspace where the unit's pre-activation has that sign.
struct HalfspaceIndicator {
    Index layer_index = 0;  // 1-based
    SignVector entries;

    IndexSet support() const;
};

/// Membership oracle for a generative region: the intersection of the
/// indicated halfspaces of `indicator` under `network`. The network is
/// borrowed and must outlive the RegionSpec.
struct RegionSpec {
    const Network* network = nullptr;
    HalfspaceIndicator indicator;
};

/// sign of each pre-activation at the layer; sign(0) = 0 only on exact
/// zero, so the boundary itself is its own sign class.
SignVector sign_pattern(const Network& net, const Vector& z, Index layer);

/// True iff entries[i] * pre_activation[i] >= 0 for every constrained
/// unit. Closed halfspaces, no tolerance: a point numerically on a
/// boundary is inside both sides.
bool contains(const RegionSpec& region, const Vector& z);

/// Sign patterns agree on every unit (full neural-representation
/// sharing).
bool shares_nrs(const Network& net, const Vector& z1, const Vector& z2, Index layer);

/// Sign patterns agree on every unit in `support` (relaxed sharing).
/// An empty support is vacuously true.
bool shares_nrs(const Network& net, const Vector& z1, const Vector& z2, Index layer,
                std::span<const Index> support);

/// Indicator whose kept entries copy the query's signs and whose other
/// entries are zero. The query is a member of the resulting region
/// whenever no kept unit sits exactly on its boundary.
HalfspaceIndicator indicator_from_query(const Network& net, const Vector& z0, Index layer,
                                        std::span<const Index> keep);

}  // namespace gbas

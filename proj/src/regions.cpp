#include "gbas/regions.hpp"

namespace gbas {

IndexSet HalfspaceIndicator::support() const {
    IndexSet s;
    for (Index i = 0; i < entries.size(); ++i)
        if (entries[i] != 0) s.push_back(i);
    return s;
}

SignVector sign_pattern(const Network& net, const Vector& z, Index layer) {
    const Vector pre = forward_to(net, z, layer).pre_activation;
    SignVector signs(pre.size());
    for (Index i = 0; i < pre.size(); ++i)
        signs[i] = pre[i] > 0.0 ? 1 : (pre[i] < 0.0 ? -1 : 0);
    return signs;
}

bool contains(const RegionSpec& region, const Vector& z) {
    if (region.network == nullptr) throw DimensionError("contains: region has no network");
    const Network& net = *region.network;
    const HalfspaceIndicator& ind = region.indicator;
    if (ind.entries.size() != net.layer_dim(ind.layer_index))
        throw DimensionError("contains: indicator length does not match layer width");

    const Vector pre = forward_to(net, z, ind.layer_index).pre_activation;
    for (Index i = 0; i < ind.entries.size(); ++i) {
        if (ind.entries[i] == 0) continue;
        if (static_cast<double>(ind.entries[i]) * pre[i] < 0.0) return false;
    }
    return true;
}

bool shares_nrs(const Network& net, const Vector& z1, const Vector& z2, Index layer) {
    return sign_pattern(net, z1, layer) == sign_pattern(net, z2, layer);
}

bool shares_nrs(const Network& net, const Vector& z1, const Vector& z2, Index layer,
                std::span<const Index> support) {
    const SignVector s1 = sign_pattern(net, z1, layer);
    const SignVector s2 = sign_pattern(net, z2, layer);
    for (Index i : support) {
        if (i < 0 || i >= s1.size())
            throw DimensionError("shares_nrs: support index out of range");
        if (s1[i] != s2[i]) return false;
    }
    return true;
}

HalfspaceIndicator indicator_from_query(const Network& net, const Vector& z0, Index layer,
                                        std::span<const Index> keep) {
    const SignVector signs = sign_pattern(net, z0, layer);
    HalfspaceIndicator ind;
    ind.layer_index = layer;
    ind.entries = SignVector::Zero(signs.size());
    for (Index i : keep) {
        if (i < 0 || i >= signs.size())
            throw DimensionError("indicator_from_query: keep index out of range");
        ind.entries[i] = signs[i];
    }
    return ind;
}

}  // namespace gbas

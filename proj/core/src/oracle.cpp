#include "kv/oracle.hpp"

#include "kv/moves.hpp"
#include "kv/rewire.hpp"

#include <unordered_map>

namespace kv {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

RingElem mu_power(int m) { return m <= 1 ? RingElem(1) : const_mu().pow(m - 1); }

struct DubrovnikCtx {
    std::unordered_map<std::string, RingElem> memo;
};

RingElem dubrovnik_rec(const Diagram& d, DubrovnikCtx& ctx) {
    int m = static_cast<int>(circuits(d).size());
    if (d.crossing_count() == 0) return mu_power(m);
    std::string key = canonical_code(d);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

    // Crossings in traversal order whose first passage runs under.
    std::vector<int> bad;
    std::vector<char> seen(d.node_count(), 0);
    for (const Circuit& c : circuits(d)) {
        for (Dart dep : c.departures) {
            int n = dart_node(dep);
            if (!d.is_crossing(n) || seen[n]) continue;
            seen[n] = 1;
            if ((dart_slot(dep) & 1) == 0) bad.push_back(n);
        }
    }

    RingElem z = RingElem(A_minus_B(), 0);
    RingElem total;
    Diagram cur = d;
    for (int n : bad) {
        total = total + z * dubrovnik_rec(smooth_node(cur, n, Smoothing::AType).diagram, ctx) -
                z * dubrovnik_rec(smooth_node(cur, n, Smoothing::BType).diagram, ctx);
        cur = switch_crossing(cur, n);
    }
    // cur is descending: stacked curled unknots split apart.
    total = total + RingElem::monomial(1, 0, 0, twist_number(cur)) * mu_power(m);
    ctx.memo.emplace(std::move(key), total);
    return total;
}

RingElem kv_statesum_rec(const Diagram& d, int vertex_ordinal, std::uint64_t marker_seed,
                         DubrovnikCtx& ctx) {
    int v = -1;
    for (int n = 0; n < d.node_count(); ++n)
        if (!d.is_crossing(n)) {
            v = n;
            break;
        }
    if (v < 0) return dubrovnik_rec(d, ctx);

    bool second_marker = marker_seed != 0 && (mix64(marker_seed ^ (vertex_ordinal * 0x9e37ull)) & 1);
    RingElem A = ring_constant(ConstantName::VarA);
    RingElem B = ring_constant(ConstantName::VarB);

    Diagram as_crossing = d;
    as_crossing.set_kind(v, NodeKind::Crossing);
    Diagram crossing_child = second_marker ? switch_crossing(as_crossing, v) : as_crossing;
    Diagram smooth_a = smooth_node(d, v, Smoothing::AType).diagram;
    Diagram smooth_b = smooth_node(d, v, Smoothing::BType).diagram;
    // Marker 1 weights the A-type smoothing by -A; marker 2 swaps the two.
    const Diagram& minus_a_child = second_marker ? smooth_b : smooth_a;
    const Diagram& minus_b_child = second_marker ? smooth_a : smooth_b;

    return kv_statesum_rec(crossing_child, vertex_ordinal + 1, marker_seed, ctx) -
           A * kv_statesum_rec(minus_a_child, vertex_ordinal + 1, marker_seed, ctx) -
           B * kv_statesum_rec(minus_b_child, vertex_ordinal + 1, marker_seed, ctx);
}

UniLaurent bracket_rec(const Diagram& d) {
    int x = -1;
    for (int n = 0; n < d.node_count(); ++n)
        if (d.is_crossing(n)) {
            x = n;
            break;
        }
    if (x < 0) {
        int m = d.free_circles();
        if (m <= 1) return UniLaurent(1);
        UniLaurent loop = -(UniLaurent::monomial(1, 2) + UniLaurent::monomial(1, -2));
        return loop.pow(m - 1);
    }
    UniLaurent a_part = UniLaurent::monomial(1, 1) * bracket_rec(smooth_node(d, x, Smoothing::AType).diagram);
    UniLaurent b_part = UniLaurent::monomial(1, -1) * bracket_rec(smooth_node(d, x, Smoothing::BType).diagram);
    return a_part + b_part;
}

void require_link(const Diagram& d, const char* who) {
    if (d.vertex_count() != 0) throw UsageError(std::string(who) + " requires a link diagram (no vertices)");
}

}  // namespace

RingElem dubrovnik(const Diagram& link, const OracleLimits& limits) {
    require_link(link, "dubrovnik");
    if (link.crossing_count() > limits.max_crossings)
        throw DepthExceeded("dubrovnik: crossing bound exceeded");
    DubrovnikCtx ctx;
    return dubrovnik_rec(link, ctx);
}

RingElem kv_statesum(const Diagram& d, const OracleLimits& limits, std::uint64_t marker_seed) {
    if (d.vertex_count() > limits.max_statesum_vertices ||
        d.crossing_count() > limits.max_statesum_crossings)
        throw DepthExceeded("kv_statesum: size bound exceeded");
    DubrovnikCtx ctx;
    return kv_statesum_rec(d, 0, marker_seed, ctx);
}

UniLaurent bracket_statesum(const Diagram& link, const OracleLimits& limits) {
    require_link(link, "bracket_statesum");
    if (link.crossing_count() > limits.max_crossings)
        throw DepthExceeded("bracket_statesum: crossing bound exceeded");
    return bracket_rec(link);
}

}  // namespace kv

#include "kv/random_diagram.hpp"

#include "kv/moves.hpp"

#include <algorithm>
#include <random>

namespace kv {

namespace {

// rng() % n is biased but deterministic across platforms, which matters more
// here than uniformity.
std::uint64_t pick(std::mt19937_64& rng, std::uint64_t n) { return n ? rng() % n : 0; }

Diagram curl_unknot(std::mt19937_64& rng) {
    Diagram d;
    int x = d.add_node(NodeKind::Crossing);
    if (pick(rng, 2)) {
        d.pair_darts(make_dart(x, 0), make_dart(x, 3));
        d.pair_darts(make_dart(x, 1), make_dart(x, 2));
    } else {
        d.pair_darts(make_dart(x, 0), make_dart(x, 1));
        d.pair_darts(make_dart(x, 2), make_dart(x, 3));
    }
    return d;
}

}  // namespace

Diagram random_diagram(const RandomDiagramParams& params) {
    std::mt19937_64 rng(params.seed * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull);
    int extra_circles = static_cast<int>(pick(rng, 2));
    int target = params.n_vertices + params.n_crossings;

    Diagram d;
    if (target == 0) {
        d.set_free_circles(1 + extra_circles);
        return d;
    }

    d = curl_unknot(rng);
    while (d.node_count() < target) {
        int remaining = target - d.node_count();
        bool use_r2 = remaining >= 2 && pick(rng, 2) == 0;
        if (use_r2) {
            auto sites = enumerate_moves(d, MoveKind::R2Insert);
            if (!sites.empty()) {
                d = apply_move(d, sites[pick(rng, sites.size())]);
                continue;
            }
        }
        MoveSpec m{MoveKind::CurlInsert};
        m.dart_a = static_cast<Dart>(pick(rng, d.dart_count()));
        m.sign = pick(rng, 2) ? +1 : -1;
        d = apply_move(d, m);
    }

    int shuffles = 2 + static_cast<int>(pick(rng, 5));
    for (int i = 0; i < shuffles; ++i) {
        auto sites = enumerate_moves(d, MoveKind::R3Slide);
        if (sites.empty()) break;
        d = apply_move(d, sites[pick(rng, sites.size())]);
    }

    // Convert a random subset of crossings to rigid vertices.
    std::vector<int> order(d.node_count());
    for (int i = 0; i < d.node_count(); ++i) order[i] = i;
    for (int i = d.node_count() - 1; i > 0; --i)
        std::swap(order[i], order[pick(rng, static_cast<std::uint64_t>(i) + 1)]);
    for (int i = 0; i < params.n_vertices; ++i) d.set_kind(order[i], NodeKind::RigidVertex);

    int late_shuffles = static_cast<int>(pick(rng, 4));
    for (int i = 0; i < late_shuffles; ++i) {
        auto kind = pick(rng, 2) ? MoveKind::VertexSlide : MoveKind::R3Slide;
        auto sites = enumerate_moves(d, kind);
        if (sites.empty()) continue;
        d = apply_move(d, sites[pick(rng, sites.size())]);
    }

    d.add_free_circles(extra_circles);
    return d;
}

}  // namespace kv

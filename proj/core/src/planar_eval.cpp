#include "kv/planar_eval.hpp"

#include "kv/moves.hpp"
#include "kv/rewire.hpp"
#include "rule_table_data.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <tuple>

namespace kv {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

size_t seeded_pick(std::uint64_t seed, std::uint64_t salt, size_t n) {
    if (n <= 1) return 0;
    return static_cast<size_t>(mix64(seed ^ mix64(salt)) % n);
}

}  // namespace

RuleTable parse_rule_table(const std::string& text) {
    RuleTable t;
    bool saw_circle = false, saw_monogon = false;
    auto weight_of = [](const std::string& w) -> RingElem {
        RingElem A = ring_constant(ConstantName::VarA);
        RingElem B = ring_constant(ConstantName::VarB);
        if (w == "mu") return const_mu();
        if (w == "bigO") return const_big_o();
        if (w == "gamma") return const_gamma();
        if (w == "xi") return const_xi();
        if (w == "-xi") return -const_xi();
        if (w == "1") return RingElem(1);
        if (w == "AB") return A * B;
        if (w == "-AB") return -(A * B);
        if (w == "1-AB") return RingElem(1) - A * B;
        if (w == "-(A+B)") return -(A + B);
        throw UsageError("rule table: unknown weight symbol " + w);
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line = line.substr(0, h);
        std::istringstream ls(line);
        std::string kind;
        if (!(ls >> kind)) continue;
        std::string w;
        if (!(ls >> w) || w.rfind("w=", 0) != 0) throw UsageError("rule table: missing weight in " + line);
        ChildTemplate child;
        child.weight = weight_of(w.substr(2));
        std::string tok;
        while (ls >> tok) {
            if (tok == "arc") {
                int i, j;
                if (!(ls >> i >> j)) throw UsageError("rule table: malformed arc");
                child.arcs.emplace_back(i, j);
            } else if (tok == "node") {
                std::array<int, 4> n{};
                for (int k = 0; k < 4; ++k)
                    if (!(ls >> n[k])) throw UsageError("rule table: malformed node");
                child.nodes.push_back(n);
            } else if (tok == "flip") {
                child.is_flip = true;
            } else {
                throw UsageError("rule table: unknown token " + tok);
            }
        }
        if (kind == "circle") {
            t.circle_weight = child.weight;
            saw_circle = true;
        } else if (kind == "monogon") {
            if (child.arcs != std::vector<std::pair<int, int>>{{1, 2}} || !child.nodes.empty())
                throw UsageError("rule table: monogon child must be 'arc 1 2'");
            t.monogon_weight = child.weight;
            saw_monogon = true;
        } else if (kind == "bigon") {
            t.bigon.push_back(std::move(child));
        } else if (kind == "triangle") {
            t.triangle.push_back(std::move(child));
        } else {
            throw UsageError("rule table: unknown identity " + kind);
        }
    }
    int flips = 0;
    for (const auto& c : t.triangle) flips += c.is_flip ? 1 : 0;
    if (!saw_circle || !saw_monogon || t.bigon.size() != 3 || t.triangle.size() != 9 || flips != 1)
        throw UsageError("rule table: incomplete table");
    return t;
}

const std::string& default_rule_table_text() {
    static const std::string text = detail::kRuleTableText;
    return text;
}

const RuleTable& default_rule_table() {
    static const RuleTable table = parse_rule_table(default_rule_table_text());
    return table;
}

namespace {

std::vector<Dart> bigon_leg_darts(const Diagram&, Dart f0, Dart f1) {
    int u = dart_node(f0), s1 = dart_slot(f0);
    int v = dart_node(f1), s2 = dart_slot(f1);
    return {make_dart(u, (s1 + 2) & 3), make_dart(u, (s1 + 3) & 3), make_dart(v, (s2 + 2) & 3),
            make_dart(v, (s2 + 3) & 3)};
}

std::vector<Dart> triangle_leg_darts(const std::array<Dart, 3>& f) {
    int u = dart_node(f[0]), su = dart_slot(f[0]);
    int v = dart_node(f[1]), sv = dart_slot(f[1]);
    int w = dart_node(f[2]), sw = dart_slot(f[2]);
    return {make_dart(v, (sv + 3) & 3), make_dart(w, (sw + 2) & 3), make_dart(w, (sw + 3) & 3),
            make_dart(u, (su + 2) & 3), make_dart(u, (su + 3) & 3), make_dart(v, (sv + 2) & 3)};
}

Diagram instantiate_child(const Diagram& d, const std::vector<int>& deleted,
                          const std::vector<Dart>& legs, const ChildTemplate& c) {
    RewireSpec spec;
    spec.deleted = deleted;
    for (auto [i, j] : c.arcs)
        spec.arcs.push_back({Terminal::make_leg(legs[i - 1]), Terminal::make_leg(legs[j - 1])});
    for (const auto& nd : c.nodes) {
        NewNodeSpec nn;
        nn.kind = NodeKind::RigidVertex;
        for (int k = 0; k < 4; ++k) nn.targets[k] = Terminal::make_leg(legs[nd[k] - 1]);
        spec.new_nodes.push_back(nn);
    }
    return rewire(d, spec).diagram;
}

// ---------------------------------------------------------------------------
// Lens machinery
// ---------------------------------------------------------------------------

struct ArcCand {
    int end_a = -1, end_b = -1;
    std::vector<Dart> deps;     // departure darts, end_a -> end_b
    std::vector<int> interior;  // interior nodes, in walk order
};

std::vector<ArcCand> enumerate_arcs(const Diagram& d) {
    std::vector<ArcCand> arcs;
    for (const Circuit& c : circuits(d)) {
        if (c.trivial_circle) continue;
        int m = static_cast<int>(c.departures.size());
        std::vector<int> nodes(m);
        for (int k = 0; k < m; ++k) nodes[k] = dart_node(c.departures[k]);
        for (int start = 0; start < m; ++start) {
            std::set<int> seen{nodes[start]};
            ArcCand cur;
            cur.end_a = nodes[start];
            for (int len = 1; len < m; ++len) {
                int idx = (start + len) % m;
                if (seen.count(nodes[idx])) break;
                seen.insert(nodes[idx]);
                cur.deps.push_back(c.departures[(start + len - 1) % m]);
                if (len >= 2) cur.interior.push_back(nodes[(start + len - 1) % m]);
                cur.end_b = nodes[idx];
                arcs.push_back(cur);
            }
        }
    }
    return arcs;
}

std::vector<Dart> reversed_mates(const Diagram& d, const std::vector<Dart>& deps) {
    std::vector<Dart> out;
    for (auto it = deps.rbegin(); it != deps.rend(); ++it) out.push_back(d.mate(*it));
    return out;
}

struct Regions {
    std::vector<int> side;  // per face: 0 left of the curve, 1 right, -1 untouched
    int fcount[2] = {0, 0};
    int v_in[2] = {0, 0};
    int e_in[2] = {0, 0};
    bool ok = true;
};

Regions compute_regions(const Diagram& d, const std::vector<Face>& fs, const std::vector<int>& face_of,
                        const std::vector<Dart>& gamma) {
    Regions r;
    std::vector<char> curve_dart(d.dart_count(), 0);
    for (Dart g : gamma) {
        curve_dart[g] = 1;
        curve_dart[d.mate(g)] = 1;
    }
    r.side.assign(fs.size(), -1);
    std::deque<int> queue;
    auto seed = [&](Dart g, int s) {
        int f = face_of[g];
        if (r.side[f] == -1) {
            r.side[f] = s;
            queue.push_back(f);
        } else if (r.side[f] != s) {
            r.ok = false;
        }
    };
    for (Dart g : gamma) seed(g, 0);
    for (Dart g : gamma) seed(d.mate(g), 1);
    while (!queue.empty()) {
        int f = queue.front();
        queue.pop_front();
        for (Dart x : fs[f]) {
            if (curve_dart[x]) continue;
            int nf = face_of[d.mate(x)];
            if (r.side[nf] == -1) {
                r.side[nf] = r.side[f];
                queue.push_back(nf);
            } else if (r.side[nf] != r.side[f]) {
                r.ok = false;
            }
        }
    }
    for (size_t f = 0; f < fs.size(); ++f)
        if (r.side[f] >= 0) ++r.fcount[r.side[f]];
    std::vector<char> node_on_curve(d.node_count(), 0);
    for (Dart g : gamma) {
        node_on_curve[dart_node(g)] = 1;
        node_on_curve[dart_node(d.mate(g))] = 1;
    }
    for (int n = 0; n < d.node_count(); ++n) {
        if (node_on_curve[n]) continue;
        int s = r.side[face_of[make_dart(n, 0)]];
        if (s >= 0) ++r.v_in[s];
    }
    for (Dart x = 0; x < d.dart_count(); ++x) {
        Dart m = d.mate(x);
        if (x >= m || curve_dart[x]) continue;
        int s = r.side[face_of[x]];
        if (s >= 0) ++r.e_in[s];
    }
    return r;
}

struct LensTrack {
    int x = -1, y = -1;
    Dart dep_a = -1, dep_b = -1;  // departure darts at x along the two arcs
    int side = 0;                 // 0: left of x->y->x traversal, 1: right
};

std::optional<std::pair<std::vector<Dart>, Dart>> walk_arc(const Diagram& d, Dart dep, int target) {
    std::vector<Dart> deps;
    std::set<int> seen{dart_node(dep)};
    Dart cur = dep;
    for (int guard = 0; guard <= d.node_count() + 1; ++guard) {
        Dart arrival = d.mate(cur);
        deps.push_back(cur);
        int n = dart_node(arrival);
        if (n == target) return std::make_pair(deps, arrival);
        if (seen.count(n)) return std::nullopt;
        seen.insert(n);
        cur = dart_rot(arrival, 2);
    }
    return std::nullopt;
}

std::vector<Dart> lens_curve(const Diagram& d, const std::vector<Dart>& deps_a,
                             const std::vector<Dart>& deps_b) {
    std::vector<Dart> gamma = deps_a;
    auto rev = reversed_mates(d, deps_b);
    gamma.insert(gamma.end(), rev.begin(), rev.end());
    return gamma;
}

std::optional<LensTrack> select_minimal_lens(const Diagram& d, std::uint64_t seed) {
    auto fs = faces(d);
    std::vector<int> face_of(d.dart_count(), -1);
    for (size_t f = 0; f < fs.size(); ++f)
        for (Dart x : fs[f]) face_of[x] = static_cast<int>(f);

    auto arcs = enumerate_arcs(d);
    std::map<std::pair<int, int>, std::vector<int>> by_ends;
    for (size_t i = 0; i < arcs.size(); ++i) {
        auto key = std::minmax(arcs[i].end_a, arcs[i].end_b);
        by_ends[{key.first, key.second}].push_back(static_cast<int>(i));
    }

    struct Cand {
        LensTrack track;
        int fcount;
    };
    std::vector<Cand> best;
    int best_fcount = std::numeric_limits<int>::max();

    for (const auto& [ends, idxs] : by_ends) {
        for (size_t ii = 0; ii < idxs.size(); ++ii) {
            for (size_t jj = ii + 1; jj < idxs.size(); ++jj) {
                const ArcCand& a = arcs[idxs[ii]];
                const ArcCand& b = arcs[idxs[jj]];
                // Interiors must be disjoint node sets.
                std::set<int> ia(a.interior.begin(), a.interior.end());
                bool overlap = false;
                for (int n : b.interior)
                    if (ia.count(n)) {
                        overlap = true;
                        break;
                    }
                if (overlap) continue;
                int x = a.end_a, y = a.end_b;
                bool b_fwd = (b.end_a == x);
                Dart a_at_x = a.deps.front();
                Dart a_at_y = d.mate(a.deps.back());
                Dart b_at_x = b_fwd ? b.deps.front() : d.mate(b.deps.back());
                Dart b_at_y = b_fwd ? d.mate(b.deps.back()) : b.deps.front();
                if ((dart_slot(a_at_x) & 1) == (dart_slot(b_at_x) & 1)) continue;
                if ((dart_slot(a_at_y) & 1) == (dart_slot(b_at_y) & 1)) continue;
                std::vector<Dart> deps_b = b_fwd ? b.deps : reversed_mates(d, b.deps);
                // deps_b now runs x -> y as departures.
                auto gamma = lens_curve(d, a.deps, deps_b);
                Regions r = compute_regions(d, fs, face_of, gamma);
                if (!r.ok) continue;
                for (int s : {0, 1}) {
                    if (r.fcount[s] == 0) continue;
                    if (r.fcount[s] > best_fcount) continue;
                    Cand c{LensTrack{x, y, a.deps.front(), deps_b.front(), s}, r.fcount[s]};
                    if (r.fcount[s] < best_fcount) {
                        best_fcount = r.fcount[s];
                        best.clear();
                    }
                    best.push_back(c);
                }
            }
        }
    }
    if (best.empty()) return std::nullopt;
    // Deterministic order, then a seeded pick among the minimal candidates.
    std::sort(best.begin(), best.end(), [](const Cand& l, const Cand& r) {
        return std::tie(l.track.x, l.track.y, l.track.dep_a, l.track.dep_b, l.track.side) <
               std::tie(r.track.x, r.track.y, r.track.dep_a, r.track.dep_b, r.track.side);
    });
    return best[seeded_pick(seed, 0x11a5, best.size())].track;
}

std::optional<std::array<Dart, 2>> find_bigon_face(const Diagram&, const std::vector<Face>& fs) {
    for (const Face& f : fs)
        if (f.size() == 2 && dart_node(f[0]) != dart_node(f[1])) return std::array<Dart, 2>{f[0], f[1]};
    return std::nullopt;
}

Reduction build_lens_plan(const Diagram& d0, std::uint64_t seed) {
    Reduction plan;
    plan.kind = Reduction::Kind::LensPlan;

    auto track_opt = select_minimal_lens(d0, seed);
    if (!track_opt)
        throw std::logic_error("no lens found in an irreducible diagram (the diagram should contain one)");
    LensTrack t = *track_opt;

    Diagram d = d0;
    std::pair<int, int> prev_measure{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
    for (int iter = 0;; ++iter) {
        if (iter > 4 * d0.node_count() * d0.node_count() + 64)
            throw std::logic_error("lens clearing failed to terminate");
        auto fs = faces(d);
        for (const Face& f : fs)
            if (f.size() == 1) throw std::logic_error("monogon appeared during lens clearing");
        if (auto bg = find_bigon_face(d, fs)) {
            plan.target_bigon = *bg;
            if (plan.flips.empty())
                throw std::logic_error("lens requested on a diagram that already has a bigon");
            return plan;
        }

        std::vector<int> face_of(d.dart_count(), -1);
        for (size_t f = 0; f < fs.size(); ++f)
            for (Dart x : fs[f]) face_of[x] = static_cast<int>(f);

        auto wa = walk_arc(d, t.dep_a, t.y);
        auto wb = walk_arc(d, t.dep_b, t.y);
        if (!wa || !wb) throw std::logic_error("lens arcs broke during clearing");
        auto gamma = lens_curve(d, wa->first, wb->first);
        Regions r = compute_regions(d, fs, face_of, gamma);
        if (!r.ok) throw std::logic_error("lens curve stopped separating");
        int s = t.side;
        std::pair<int, int> measure{r.v_in[s], r.e_in[s]};
        if (!(measure < prev_measure)) throw std::logic_error("lens measure failed to decrease");
        prev_measure = measure;

        std::vector<char> curve_dart(d.dart_count(), 0);
        std::vector<char> node_on_curve(d.node_count(), 0);
        for (Dart g : gamma) {
            curve_dart[g] = 1;
            curve_dart[d.mate(g)] = 1;
            node_on_curve[dart_node(g)] = 1;
            node_on_curve[dart_node(d.mate(g))] = 1;
        }
        std::vector<std::array<Dart, 3>> preferred, fallback;
        for (const Face& f : fs) {
            if (f.size() != 3) continue;
            if (r.side[face_of[f[0]]] != s) continue;
            int c0 = dart_node(f[0]), c1 = dart_node(f[1]), c2 = dart_node(f[2]);
            if (c0 == c1 || c1 == c2 || c0 == c2) continue;
            bool touches_curve = curve_dart[f[0]] || curve_dart[f[1]] || curve_dart[f[2]];
            if (!touches_curve) continue;
            int inner_corners = !node_on_curve[c0] + !node_on_curve[c1] + !node_on_curve[c2];
            std::array<Dart, 3> site{f[0], f[1], f[2]};
            (inner_corners >= 1 ? preferred : fallback).push_back(site);
        }
        auto& pool = preferred.empty() ? fallback : preferred;
        if (pool.empty()) throw std::logic_error("no flippable triangle on the lens boundary");
        std::sort(pool.begin(), pool.end());
        auto site = pool[seeded_pick(seed, 0x7713 + iter, pool.size())];
        plan.flips.push_back(site);

        FlipResult flip = flip_triangle(d, site);
        // Remap the tracked lens endpoints and departure darts.
        std::array<int, 3> corner{dart_node(site[0]), dart_node(site[1]), dart_node(site[2])};
        std::array<int, 3> base{dart_slot(site[0]), dart_slot(site[1]), dart_slot(site[2])};
        auto remap_node = [&](int n) {
            for (int i = 0; i < 3; ++i)
                if (corner[i] == n) return flip.new_corner[i];
            return flip.rw.node_map[n];
        };
        auto remap_dart = [&](Dart dd) {
            int n = dart_node(dd);
            for (int i = 0; i < 3; ++i)
                if (corner[i] == n) {
                    int k = (dart_slot(dd) - base[i] + 4) & 3;
                    return make_dart(flip.new_corner[i], flip.slot_map[i][k]);
                }
            return make_dart(flip.rw.node_map[n], dart_slot(dd));
        };
        t.x = remap_node(t.x);
        t.y = remap_node(t.y);
        t.dep_a = remap_dart(t.dep_a);
        t.dep_b = remap_dart(t.dep_b);
        d = flip.rw.diagram;
    }
}

Reduction build_bfs_plan(const Diagram& d0) {
    struct State {
        Diagram d;
        std::vector<std::array<Dart, 3>> flips;
    };
    std::deque<State> queue{{d0, {}}};
    std::set<std::string> visited{canonical_code(d0)};
    const size_t kMaxStates = 50000;
    while (!queue.empty()) {
        State st = std::move(queue.front());
        queue.pop_front();
        for (const Face& f : faces(st.d)) {
            if (f.size() != 3) continue;
            int c0 = dart_node(f[0]), c1 = dart_node(f[1]), c2 = dart_node(f[2]);
            if (c0 == c1 || c1 == c2 || c0 == c2) continue;
            std::array<Dart, 3> site{f[0], f[1], f[2]};
            Diagram child = flip_triangle(st.d, site).rw.diagram;
            auto plan_flips = st.flips;
            plan_flips.push_back(site);
            auto child_faces = faces(child);
            if (auto bg = find_bigon_face(child, child_faces)) {
                Reduction plan;
                plan.kind = Reduction::Kind::LensPlan;
                plan.flips = std::move(plan_flips);
                plan.target_bigon = *bg;
                return plan;
            }
            std::string code = canonical_code(child);
            if (visited.count(code)) continue;
            visited.insert(code);
            if (visited.size() > kMaxStates)
                throw std::logic_error("bfs fallback exceeded its state bound");
            queue.push_back({std::move(child), std::move(plan_flips)});
        }
    }
    throw std::logic_error("bfs fallback found no bigon");
}

}  // namespace

Reduction find_reducible(const Diagram& d, const EvalOptions& opts) {
    if (d.node_count() == 0) {
        if (d.free_circles() >= 2) {
            Reduction r;
            r.kind = Reduction::Kind::FreeCircle;
            return r;
        }
        throw NoVertexNoCircle(d.free_circles() == 1
                                   ? "a lone circle is the base case (value 1)"
                                   : "empty diagram");
    }
    if (d.crossing_count() != 0) throw UsageError("find_reducible requires a crossing-free diagram");
    if (d.free_circles() >= 1) {
        Reduction r;
        r.kind = Reduction::Kind::FreeCircle;
        return r;
    }
    auto fs = faces(d);
    std::vector<Dart> monogons;
    for (const Face& f : fs)
        if (f.size() == 1) monogons.push_back(f[0]);
    if (!monogons.empty()) {
        std::sort(monogons.begin(), monogons.end());
        Reduction r;
        r.kind = Reduction::Kind::Monogon;
        r.monogon_dart = monogons[seeded_pick(opts.choice_seed, 0x01, monogons.size())];
        return r;
    }
    std::vector<std::array<Dart, 2>> bigons;
    for (const Face& f : fs)
        if (f.size() == 2 && dart_node(f[0]) != dart_node(f[1]))
            bigons.push_back({f[0], f[1]});
    if (!bigons.empty()) {
        std::sort(bigons.begin(), bigons.end());
        Reduction r;
        r.kind = Reduction::Kind::Bigon;
        r.bigon = bigons[seeded_pick(opts.choice_seed, 0x02, bigons.size())];
        return r;
    }
    if (opts.bfs_fallback) return build_bfs_plan(d);
    return build_lens_plan(d, opts.choice_seed);
}

std::vector<std::pair<RingElem, Diagram>> apply_identity(const Diagram& d, const Reduction& r,
                                                         const RuleTable& table) {
    std::vector<std::pair<RingElem, Diagram>> out;
    switch (r.kind) {
        case Reduction::Kind::FreeCircle: {
            if (d.free_circles() < 1 || (d.node_count() == 0 && d.free_circles() < 2))
                throw RuleMismatch("no removable circle");
            Diagram child = d;
            child.add_free_circles(-1);
            out.emplace_back(table.circle_weight, std::move(child));
            break;
        }
        case Reduction::Kind::Monogon: {
            Dart f0 = r.monogon_dart;
            if (f0 < 0 || f0 >= d.dart_count() || face_next(d, f0) != f0)
                throw RuleMismatch("monogon face absent");
            int n = dart_node(f0), s = dart_slot(f0);
            std::vector<Dart> legs{make_dart(n, (s + 2) & 3), make_dart(n, (s + 3) & 3)};
            ChildTemplate c;
            c.weight = table.monogon_weight;
            c.arcs = {{1, 2}};
            out.emplace_back(c.weight, instantiate_child(d, {n}, legs, c));
            break;
        }
        case Reduction::Kind::Bigon: {
            Dart f0 = r.bigon[0], f1 = r.bigon[1];
            if (f0 < 0 || f1 < 0 || f0 >= d.dart_count() || f1 >= d.dart_count() ||
                face_next(d, f0) != f1 || face_next(d, f1) != f0)
                throw RuleMismatch("bigon face absent");
            int u = dart_node(f0), v = dart_node(f1);
            if (u == v) throw RuleMismatch("bigon corners are not distinct");
            auto legs = bigon_leg_darts(d, f0, f1);
            for (const auto& c : table.bigon)
                out.emplace_back(c.weight, instantiate_child(d, {u, v}, legs, c));
            break;
        }
        case Reduction::Kind::LensPlan: {
            if (r.flips.empty()) throw RuleMismatch("empty lens plan");
            const auto& f = r.flips.front();
            if (face_next(d, f[0]) != f[1] || face_next(d, f[1]) != f[2] || face_next(d, f[2]) != f[0])
                throw RuleMismatch("scheduled triangle face absent");
            int u = dart_node(f[0]), v = dart_node(f[1]), w = dart_node(f[2]);
            auto legs = triangle_leg_darts(f);
            for (const auto& c : table.triangle)
                if (c.is_flip) out.emplace_back(c.weight, flip_triangle(d, f).rw.diagram);
            for (const auto& c : table.triangle)
                if (!c.is_flip) out.emplace_back(c.weight, instantiate_child(d, {u, v, w}, legs, c));
            break;
        }
    }
    return out;
}

Evaluator::Evaluator(EvalOptions opts, const RuleTable* table)
    : opts_(opts), table_(table ? table : &default_rule_table()) {}

namespace {
std::tuple<int, std::size_t, int> termination_measure(const Diagram& d, std::size_t plan_len) {
    return {d.node_count(), plan_len, d.free_circles()};
}
}  // namespace

RingElem Evaluator::eval_planar_rec(const Diagram& d, std::vector<std::array<Dart, 3>> plan) {
    if (d.node_count() == 0) {
        int k = d.free_circles();
        if (k <= 1) return RingElem(1);  // the unknot, and internally the empty diagram
        return const_mu().pow(k - 1);
    }
    std::string key = canonical_code(d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    Reduction r;
    if (!plan.empty()) {
        r.kind = Reduction::Kind::LensPlan;
        r.flips = std::move(plan);
    } else {
        r = find_reducible(d, opts_);
    }
    auto parent_m =
        termination_measure(d, r.kind == Reduction::Kind::LensPlan ? r.flips.size() : 0);
    auto children = apply_identity(d, r, *table_);
    RingElem total;
    for (std::size_t i = 0; i < children.size(); ++i) {
        std::vector<std::array<Dart, 3>> child_plan;
        if (r.kind == Reduction::Kind::LensPlan && i == 0 && r.flips.size() > 1)
            child_plan.assign(r.flips.begin() + 1, r.flips.end());
        auto child_m = termination_measure(children[i].second, child_plan.size());
        if (!(child_m < parent_m)) throw std::logic_error("termination measure did not decrease");
        total = total + children[i].first * eval_planar_rec(children[i].second, std::move(child_plan));
    }
    memo_.emplace(std::move(key), total);
    return total;
}

RingElem Evaluator::eval_planar(const Diagram& d) {
    if (d.crossing_count() != 0) throw UsageError("eval_planar requires a crossing-free diagram");
    return eval_planar_rec(d, {});
}

RingElem Evaluator::eval(const Diagram& d) {
    int x = -1;
    for (int n = 0; n < d.node_count(); ++n)
        if (d.is_crossing(n)) {
            x = n;
            break;
        }
    if (x < 0) return eval_planar_rec(d, {});
    std::string key = canonical_code(d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    RingElem A = ring_constant(ConstantName::VarA);
    RingElem B = ring_constant(ConstantName::VarB);
    RingElem total = A * eval(smooth_node(d, x, Smoothing::AType).diagram) +
                     B * eval(smooth_node(d, x, Smoothing::BType).diagram) +
                     eval(crossing_to_vertex(d, x));
    memo_.emplace(std::move(key), total);
    return total;
}

RingElem eval_planar(const Diagram& d, std::uint64_t choice_seed) {
    Evaluator ev(EvalOptions{choice_seed, false});
    return ev.eval_planar(d);
}

UniLaurent eval_planar_closed_form(const Diagram& d) {
    if (d.crossing_count() != 0)
        throw UsageError("eval_planar_closed_form requires a crossing-free diagram");
    int c = component_count(d);
    if (c == 0) return UniLaurent(1);
    UniLaurent loop = -(UniLaurent::monomial(1, 1) + UniLaurent::monomial(1, -1));
    return UniLaurent(2).pow(c - 1) * loop.pow(d.vertex_count());
}

}  // namespace kv

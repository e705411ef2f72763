#include "kv/moves.hpp"

#include <algorithm>

namespace kv {

namespace {

Face trace_face(const Diagram& d, Dart start) {
    Face f;
    Dart x = start;
    do {
        f.push_back(x);
        x = face_next(d, x);
    } while (x != start);
    return f;
}

bool same_edge(const Diagram& d, Dart a, Dart b) { return a == b || d.mate(a) == b; }

Diagram insert_curl(const Diagram& d, Dart u, int sign) {
    Diagram r = d;
    Dart w = r.mate(u);
    int x = r.add_node(NodeKind::Crossing);
    if (sign > 0) {
        // Loop on slots {3,0}; the strand runs u -> slot1 ... slot2 -> w.
        r.pair_darts(make_dart(x, 0), make_dart(x, 3));
        r.pair_darts(u, make_dart(x, 1));
        r.pair_darts(make_dart(x, 2), w);
    } else {
        // Loop on slots {0,1}; strand on slots {2,3}.
        r.pair_darts(make_dart(x, 0), make_dart(x, 1));
        r.pair_darts(u, make_dart(x, 2));
        r.pair_darts(make_dart(x, 3), w);
    }
    return r;
}

Diagram insert_r2(const Diagram& d, Dart p, Dart q) {
    // Pushes a finger of p's edge across q's edge through their shared face;
    // the p-strand ends up over at both new crossings.
    Diagram r = d;
    Dart pm = r.mate(p), qm = r.mate(q);
    int x1 = r.add_node(NodeKind::Crossing);
    int x2 = r.add_node(NodeKind::Crossing);
    r.pair_darts(p, make_dart(x1, 1));
    r.pair_darts(make_dart(x1, 3), make_dart(x2, 3));
    r.pair_darts(make_dart(x2, 1), pm);
    r.pair_darts(q, make_dart(x2, 2));
    r.pair_darts(make_dart(x2, 0), make_dart(x1, 2));
    r.pair_darts(make_dart(x1, 0), qm);
    return r;
}

// Move V turns the rigid disk over: the vertex rotation reverses and the two
// opposite corner pairs along the flip axis each pick up a crossing. The two
// crossings involve the same pair of strands with opposite over/under, so the
// twisting number is unchanged and both vertex smoothings cancel by R2.
Diagram insert_twist(const Diagram& d, int v, int s, int sign) {
    int shift = (s + 1) & 3;
    auto leg = [&](int k) { return Terminal::make_leg(make_dart(v, (k + shift) & 3)); };
    RewireSpec spec;
    spec.deleted = {v};
    spec.new_nodes.resize(3);
    NewNodeSpec& vv = spec.new_nodes[0];  // the flipped vertex
    NewNodeSpec& xe = spec.new_nodes[1];
    NewNodeSpec& xw = spec.new_nodes[2];
    vv.kind = NodeKind::RigidVertex;
    xe.kind = xw.kind = NodeKind::Crossing;
    if (sign > 0) {
        xe.targets = {leg(3), leg(0), Terminal::make_slot(0, 0), Terminal::make_slot(0, 3)};
        xw.targets = {Terminal::make_slot(0, 1), leg(1), leg(2), Terminal::make_slot(0, 2)};
        vv.targets = {Terminal::make_slot(1, 2), Terminal::make_slot(2, 0),
                      Terminal::make_slot(2, 3), Terminal::make_slot(1, 3)};
    } else {
        xe.targets = {leg(0), Terminal::make_slot(0, 0), Terminal::make_slot(0, 3), leg(3)};
        xw.targets = {leg(1), leg(2), Terminal::make_slot(0, 2), Terminal::make_slot(0, 1)};
        vv.targets = {Terminal::make_slot(1, 1), Terminal::make_slot(2, 3),
                      Terminal::make_slot(2, 2), Terminal::make_slot(1, 2)};
    }
    return rewire(d, spec).diagram;
}

struct HostedFlip {
    int xe, xw;  // the two twist crossings
    int sign;
    std::array<Dart, 4> originals;  // legs recovering the pre-flip attachments
};

/// Detects a flipped-vertex configuration around v (any base rotation).
std::optional<HostedFlip> hosted_twist(const Diagram& d, int v) {
    for (int r = 0; r < 4; ++r) {
        Dart m0 = d.mate(make_dart(v, r));
        Dart m1 = d.mate(make_dart(v, (r + 1) & 3));
        Dart m2 = d.mate(make_dart(v, (r + 2) & 3));
        Dart m3 = d.mate(make_dart(v, (r + 3) & 3));
        int xe = dart_node(m0), xw = dart_node(m1);
        if (xe == v || xw == v || xe == xw) continue;
        if (dart_node(m3) != xe || dart_node(m2) != xw) continue;
        if (!d.is_crossing(xe) || !d.is_crossing(xw)) continue;
        if (dart_slot(m0) == 2 && dart_slot(m3) == 3 && dart_slot(m1) == 0 && dart_slot(m2) == 3) {
            return HostedFlip{xe, xw, +1,
                              {make_dart(xe, 1), make_dart(xw, 1), make_dart(xw, 2), make_dart(xe, 0)}};
        }
        if (dart_slot(m0) == 1 && dart_slot(m3) == 2 && dart_slot(m1) == 3 && dart_slot(m2) == 2) {
            return HostedFlip{xe, xw, -1,
                              {make_dart(xe, 0), make_dart(xw, 0), make_dart(xw, 1), make_dart(xe, 3)}};
        }
    }
    return std::nullopt;
}

Diagram remove_twist(const Diagram& d, int v, const HostedFlip& h) {
    RewireSpec spec;
    spec.deleted = {v, h.xe, h.xw};
    spec.new_nodes.resize(1);
    spec.new_nodes[0].kind = NodeKind::RigidVertex;
    for (int k = 0; k < 4; ++k) spec.new_nodes[0].targets[k] = Terminal::make_leg(h.originals[k]);
    return rewire(d, spec).diagram;
}

// Strand identity at a triangle corner: returns which of the three strands
// (0: legs1-4, 1: legs2-5, 2: legs3-6) is the over-strand, or -1 for vertices.
struct TriangleInfo {
    std::array<int, 3> corner;       // u, v, w
    std::array<int, 3> base_slot;    // su, sv, sw
    // over[pair]: at the corner carrying that strand pair, is the first strand over?
    // pairs: corner u carries (S14,S25), v carries (S14,S36), w carries (S25,S36)
    std::array<int, 3> first_over;   // -1 when the corner is a vertex
};

TriangleInfo triangle_info(const Diagram& d, const std::array<Dart, 3>& f) {
    if (face_next(d, f[0]) != f[1] || face_next(d, f[1]) != f[2] || face_next(d, f[2]) != f[0])
        throw RuleMismatch("darts do not trace a triangle face");
    TriangleInfo t;
    for (int i = 0; i < 3; ++i) {
        t.corner[i] = dart_node(f[i]);
        t.base_slot[i] = dart_slot(f[i]);
    }
    if (t.corner[0] == t.corner[1] || t.corner[1] == t.corner[2] || t.corner[0] == t.corner[2])
        throw RuleMismatch("triangle corners are not distinct");
    // u carries S14 on slots {su, su+2}; v carries S14 on {sv+1, sv+3};
    // w carries S25 on {sw, sw+2}. Over-strand sits on odd slots.
    t.first_over[0] = d.is_crossing(t.corner[0]) ? (t.base_slot[0] & 1) : -1;
    t.first_over[1] = d.is_crossing(t.corner[1]) ? ((t.base_slot[1] + 1) & 1) : -1;
    t.first_over[2] = d.is_crossing(t.corner[2]) ? (t.base_slot[2] & 1) : -1;
    return t;
}

}  // namespace

std::optional<int> curl_loop_slot(const Diagram& d, int node) {
    for (int s = 0; s < 4; ++s)
        if (d.mate(make_dart(node, s)) == make_dart(node, (s + 1) & 3)) return s;
    return std::nullopt;
}

int curl_sign(const Diagram& d, int node) {
    auto s = curl_loop_slot(d, node);
    if (!s || !d.is_crossing(node)) throw SiteMismatch("node is not a curl crossing");
    return (*s & 1) ? +1 : -1;
}

FlipResult flip_triangle(const Diagram& d, const std::array<Dart, 3>& face_darts) {
    TriangleInfo t = triangle_info(d, face_darts);
    int u = t.corner[0], v = t.corner[1], w = t.corner[2];
    int su = t.base_slot[0], sv = t.base_slot[1], sw = t.base_slot[2];

    auto leg = [&](int idx) {  // legs 1..6 counterclockwise around the configuration
        switch (idx) {
            case 1: return make_dart(v, (sv + 3) & 3);
            case 2: return make_dart(w, (sw + 2) & 3);
            case 3: return make_dart(w, (sw + 3) & 3);
            case 4: return make_dart(u, (su + 2) & 3);
            case 5: return make_dart(u, (su + 3) & 3);
            default: return make_dart(v, (sv + 2) & 3);
        }
    };

    // Replacement corners P,Q,R with strand-to-slot-parity preserved: the
    // template puts S14 under at P and Q and S25 under at R; rotate by one
    // when the original crossing had the opposite assignment.
    int rP = (d.is_crossing(u) && (su & 1)) ? 1 : 0;
    int rQ = (d.is_crossing(v) && !(sv & 1)) ? 1 : 0;
    int rR = (d.is_crossing(w) && (sw & 1)) ? 1 : 0;

    RewireSpec spec;
    spec.deleted = {u, v, w};
    spec.new_nodes.resize(3);
    spec.new_nodes[0].kind = d.kind(u);
    spec.new_nodes[1].kind = d.kind(v);
    spec.new_nodes[2].kind = d.kind(w);
    auto set = [&](int node, int r, int tpl_slot, Terminal target) {
        spec.new_nodes[node].targets[(tpl_slot + r) & 3] = target;
    };
    set(0, rP, 0, Terminal::make_leg(leg(1)));
    set(0, rP, 1, Terminal::make_leg(leg(2)));
    set(0, rP, 2, Terminal::make_slot(1, (0 + rQ) & 3));
    set(0, rP, 3, Terminal::make_slot(2, (0 + rR) & 3));
    set(1, rQ, 0, Terminal::make_slot(0, (2 + rP) & 3));
    set(1, rQ, 1, Terminal::make_leg(leg(3)));
    set(1, rQ, 2, Terminal::make_leg(leg(4)));
    set(1, rQ, 3, Terminal::make_slot(2, (1 + rR) & 3));
    set(2, rR, 0, Terminal::make_slot(0, (3 + rP) & 3));
    set(2, rR, 1, Terminal::make_slot(1, (3 + rQ) & 3));
    set(2, rR, 2, Terminal::make_leg(leg(5)));
    set(2, rR, 3, Terminal::make_leg(leg(6)));

    FlipResult res;
    res.rw = rewire(d, spec);
    for (int i = 0; i < 3; ++i) res.new_corner[i] = res.rw.new_node_index[i];
    int rot[3] = {rP, rQ, rR};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 4; ++k) res.slot_map[i][k] = (k + i + rot[i]) & 3;
    return res;
}

RewireResult smooth_node(const Diagram& d, int node, Smoothing s) {
    RewireSpec spec;
    spec.deleted = {node};
    auto L = [&](int slot) { return Terminal::make_leg(make_dart(node, slot)); };
    if (s == Smoothing::AType)
        spec.arcs = {{L(0), L(3)}, {L(1), L(2)}};
    else
        spec.arcs = {{L(0), L(1)}, {L(2), L(3)}};
    return rewire(d, spec);
}

Diagram crossing_to_vertex(const Diagram& d, int node) {
    Diagram r = d;
    r.set_kind(node, NodeKind::RigidVertex);
    return r;
}

Diagram switch_crossing(const Diagram& d, int node) {
    if (!d.is_crossing(node)) throw RuleMismatch("switching a non-crossing");
    Diagram r = d;
    std::array<Dart, 4> om;
    for (int k = 0; k < 4; ++k) om[k] = d.mate(make_dart(node, k));
    auto tr = [&](Dart m) {
        return dart_node(m) == node ? make_dart(node, (dart_slot(m) + 3) & 3) : m;
    };
    for (int k = 0; k < 4; ++k) r.pair_darts(make_dart(node, k), tr(om[(k + 1) & 3]));
    return r;
}

Diagram apply_move(const Diagram& d, const MoveSpec& m) {
    switch (m.move) {
        case MoveKind::CurlInsert: {
            if (m.dart_a == -1) {  // curl a free circle
                if (d.free_circles() < 1) throw SiteMismatch("no free circle to curl");
                Diagram r = d;
                r.add_free_circles(-1);
                int x = r.add_node(NodeKind::Crossing);
                if (m.sign > 0) {
                    r.pair_darts(make_dart(x, 0), make_dart(x, 3));
                    r.pair_darts(make_dart(x, 1), make_dart(x, 2));
                } else {
                    r.pair_darts(make_dart(x, 0), make_dart(x, 1));
                    r.pair_darts(make_dart(x, 2), make_dart(x, 3));
                }
                return r;
            }
            if (m.dart_a < 0 || m.dart_a >= d.dart_count()) throw SiteMismatch("bad curl site");
            return insert_curl(d, m.dart_a, m.sign);
        }
        case MoveKind::CurlRemove: {
            if (m.node < 0 || m.node >= d.node_count() || !d.is_crossing(m.node) ||
                !curl_loop_slot(d, m.node))
                throw SiteMismatch("node is not a curl crossing");
            int s = *curl_loop_slot(d, m.node);
            RewireSpec spec;
            spec.deleted = {m.node};
            spec.arcs = {{Terminal::make_leg(make_dart(m.node, (s + 2) & 3)),
                          Terminal::make_leg(make_dart(m.node, (s + 3) & 3))}};
            return rewire(d, spec).diagram;
        }
        case MoveKind::R2Insert: {
            Dart p = m.dart_a, q = m.dart_b;
            if (m.sign < 0) std::swap(p, q);
            if (p < 0 || q < 0 || p >= d.dart_count() || q >= d.dart_count() || same_edge(d, p, q))
                throw SiteMismatch("R2 sites must be distinct edges");
            Face f = trace_face(d, p);
            if (std::find(f.begin(), f.end(), q) == f.end())
                throw SiteMismatch("R2 sites must lie on one face");
            return insert_r2(d, p, q);
        }
        case MoveKind::R2Remove: {
            Dart f1 = m.face[0];
            if (f1 < 0) throw SiteMismatch("missing bigon site");
            Face f = trace_face(d, f1);
            if (f.size() != 2) throw SiteMismatch("site is not a bigon face");
            Dart f2 = f[1];
            int n1 = dart_node(f1), n2 = dart_node(f2);
            int a = dart_slot(f1), b = dart_slot(f2);
            if (n1 == n2 || !d.is_crossing(n1) || !d.is_crossing(n2))
                throw SiteMismatch("bigon is not between two crossings");
            if (((a + b) & 1) == 0) throw SiteMismatch("bigon is not an R2 pair");
            RewireSpec spec;
            spec.deleted = {n1, n2};
            spec.arcs = {{Terminal::make_leg(make_dart(n1, (a + 2) & 3)),
                          Terminal::make_leg(make_dart(n2, (b + 3) & 3))},
                         {Terminal::make_leg(make_dart(n1, (a + 3) & 3)),
                          Terminal::make_leg(make_dart(n2, (b + 2) & 3))}};
            return rewire(d, spec).diagram;
        }
        case MoveKind::R3Slide: {
            TriangleInfo t = triangle_info(d, m.face);
            for (int c : t.corner)
                if (!d.is_crossing(c)) throw SiteMismatch("R3 corners must be crossings");
            // Reject the cyclic over/under pattern (no strand over or under both others).
            // Strand over-count: S14 over at u iff first_over[0], at v iff first_over[1];
            // S25 over at u iff !first_over[0], at w iff first_over[2];
            // S36 over at v iff !first_over[1], at w iff !first_over[2].
            bool s14 = t.first_over[0] == t.first_over[1];
            bool s25 = (1 - t.first_over[0]) == t.first_over[2];
            bool s36 = (1 - t.first_over[1]) == (1 - t.first_over[2]);
            if (!s14 && !s25 && !s36) throw SiteMismatch("cyclic crossing pattern is not slideable");
            return flip_triangle(d, m.face).rw.diagram;
        }
        case MoveKind::VertexSlide: {
            TriangleInfo t = triangle_info(d, m.face);
            int n_vertices = 0;
            for (int c : t.corner) n_vertices += d.is_crossing(c) ? 0 : 1;
            if (n_vertices != 1) throw SiteMismatch("vertex slide needs exactly one vertex corner");
            // The strand through the two crossings must be over at both or under at both.
            bool ok = false;
            if (!d.is_crossing(t.corner[0]))  // vertex = u: sliding strand S36 through v,w
                ok = (1 - t.first_over[1]) == (1 - t.first_over[2]);
            else if (!d.is_crossing(t.corner[1]))  // vertex = v: S25 through u,w
                ok = (1 - t.first_over[0]) == t.first_over[2];
            else  // vertex = w: S14 through u,v
                ok = t.first_over[0] == t.first_over[1];
            if (!ok) throw SiteMismatch("strand is not consistently over or under the vertex legs");
            return flip_triangle(d, m.face).rw.diagram;
        }
        case MoveKind::VertexTwist: {
            if (m.node < 0 || m.node >= d.node_count() || d.is_crossing(m.node) || m.slot < 0 ||
                m.slot > 3)
                throw SiteMismatch("twist site must be a vertex corner");
            auto hosted = hosted_twist(d, m.node);
            if (hosted && hosted->sign == -m.sign) return remove_twist(d, m.node, *hosted);
            return insert_twist(d, m.node, m.slot, m.sign);
        }
    }
    throw SiteMismatch("unknown move");
}

std::vector<MoveSpec> enumerate_moves(const Diagram& d, MoveKind kind) {
    std::vector<MoveSpec> out;
    switch (kind) {
        case MoveKind::CurlInsert:
            for (Dart x = 0; x < d.dart_count(); ++x)
                for (int sign : {+1, -1}) {
                    MoveSpec m{MoveKind::CurlInsert};
                    m.dart_a = x;
                    m.sign = sign;
                    out.push_back(m);
                }
            if (d.free_circles() > 0)
                for (int sign : {+1, -1}) {
                    MoveSpec m{MoveKind::CurlInsert};
                    m.dart_a = -1;
                    m.sign = sign;
                    out.push_back(m);
                }
            break;
        case MoveKind::CurlRemove:
            for (int n = 0; n < d.node_count(); ++n)
                if (d.is_crossing(n) && curl_loop_slot(d, n)) {
                    MoveSpec m{MoveKind::CurlRemove};
                    m.node = n;
                    out.push_back(m);
                }
            break;
        case MoveKind::R2Insert:
            for (const Face& f : faces(d))
                for (size_t i = 0; i < f.size(); ++i)
                    for (size_t j = i + 1; j < f.size(); ++j) {
                        if (same_edge(d, f[i], f[j])) continue;
                        for (int sign : {+1, -1}) {
                            MoveSpec m{MoveKind::R2Insert};
                            m.dart_a = f[i];
                            m.dart_b = f[j];
                            m.sign = sign;
                            out.push_back(m);
                        }
                    }
            break;
        case MoveKind::R2Remove:
            for (const Face& f : faces(d)) {
                if (f.size() != 2) continue;
                int n1 = dart_node(f[0]), n2 = dart_node(f[1]);
                if (n1 == n2 || !d.is_crossing(n1) || !d.is_crossing(n2)) continue;
                if (((dart_slot(f[0]) + dart_slot(f[1])) & 1) == 0) continue;
                MoveSpec m{MoveKind::R2Remove};
                m.face = {f[0], f[1], -1};
                out.push_back(m);
            }
            break;
        case MoveKind::R3Slide:
        case MoveKind::VertexSlide:
            for (const Face& f : faces(d)) {
                if (f.size() != 3) continue;
                MoveSpec m{kind};
                m.face = {f[0], f[1], f[2]};
                try {
                    apply_move(d, m);
                } catch (const SiteMismatch&) {
                    continue;
                } catch (const RuleMismatch&) {
                    continue;
                }
                out.push_back(m);
            }
            break;
        case MoveKind::VertexTwist:
            for (int n = 0; n < d.node_count(); ++n) {
                if (d.is_crossing(n)) continue;
                for (int s = 0; s < 4; ++s)
                    for (int sign : {+1, -1}) {
                        MoveSpec m{MoveKind::VertexTwist};
                        m.node = n;
                        m.slot = s;
                        m.sign = sign;
                        out.push_back(m);
                    }
            }
            break;
    }
    return out;
}

}  // namespace kv

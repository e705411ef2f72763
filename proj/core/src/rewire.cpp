#include "kv/rewire.hpp"

#include <algorithm>
#include <map>

namespace kv {

namespace {

// Ports are the legs plus the new-node slots, numbered legs first.
struct PortIndex {
    std::map<Dart, int> leg_port;
    int n_legs = 0;
    int n_new = 0;

    int of(const Terminal& t) const {
        if (t.kind == Terminal::Kind::Leg) {
            auto it = leg_port.find(t.leg);
            if (it == leg_port.end()) throw RuleMismatch("terminal references an unknown leg");
            return it->second;
        }
        return n_legs + t.new_node * 4 + t.new_slot;
    }
    int total() const { return n_legs + n_new * 4; }
};

}  // namespace

RewireResult rewire(const Diagram& d, const RewireSpec& spec) {
    std::vector<char> is_deleted(d.node_count(), 0);
    for (int n : spec.deleted) is_deleted[n] = 1;

    // Collect referenced legs.
    PortIndex ports;
    auto note_leg = [&](const Terminal& t) {
        if (t.kind != Terminal::Kind::Leg) return;
        if (t.leg < 0 || t.leg >= d.dart_count() || !is_deleted[dart_node(t.leg)])
            throw RuleMismatch("leg terminal must be a dart on a deleted node");
        auto [it, inserted] = ports.leg_port.try_emplace(t.leg, 0);
        if (!inserted) throw RuleMismatch("leg referenced twice");
        (void)it;
    };
    for (const auto& [t1, t2] : spec.arcs) {
        note_leg(t1);
        note_leg(t2);
    }
    for (const auto& nn : spec.new_nodes)
        for (const auto& t : nn.targets) note_leg(t);
    {
        int i = 0;
        for (auto& [leg, port] : ports.leg_port) port = i++;
        ports.n_legs = i;
    }
    ports.n_new = static_cast<int>(spec.new_nodes.size());

    // m1: perfect matching on ports from the spec (arcs + new-slot targets).
    std::vector<int> m1(ports.total(), -1);
    auto link = [&](int a, int b) {
        if (a == b) throw RuleMismatch("terminal linked to itself");
        if ((m1[a] != -1 && m1[a] != b) || (m1[b] != -1 && m1[b] != a))
            throw RuleMismatch("terminal linked twice");
        m1[a] = b;
        m1[b] = a;
    };
    for (const auto& [t1, t2] : spec.arcs) link(ports.of(t1), ports.of(t2));
    for (int i = 0; i < ports.n_new; ++i)
        for (int s = 0; s < 4; ++s)
            link(ports.n_legs + i * 4 + s, ports.of(spec.new_nodes[i].targets[s]));
    for (int p = 0; p < ports.total(); ++p)
        if (m1[p] < 0) throw RuleMismatch("unmatched terminal in rewire spec");

    // Sanity: unreferenced deleted darts must pair among deleted darts.
    std::vector<Dart> port_leg(ports.n_legs);
    for (const auto& [leg, port] : ports.leg_port) port_leg[port] = leg;
    for (int n : spec.deleted)
        for (int s = 0; s < 4; ++s) {
            Dart x = make_dart(n, s);
            if (ports.leg_port.count(x)) continue;
            if (!is_deleted[dart_node(d.mate(x))] || ports.leg_port.count(d.mate(x)))
                throw RuleMismatch("deleted dart neither referenced nor internal");
        }

    // Build the result skeleton: surviving nodes in order, then new nodes.
    RewireResult res;
    res.node_map.assign(d.node_count(), -1);
    for (int n = 0; n < d.node_count(); ++n)
        if (!is_deleted[n]) res.node_map[n] = res.diagram.add_node(d.kind(n));
    for (const auto& nn : spec.new_nodes) res.new_node_index.push_back(res.diagram.add_node(nn.kind));
    res.diagram.add_free_circles(d.free_circles());

    auto remap = [&](Dart x) { return make_dart(res.node_map[dart_node(x)], dart_slot(x)); };

    // Copy edges between surviving nodes.
    for (Dart x = 0; x < d.dart_count(); ++x) {
        Dart m = d.mate(x);
        if (x < m && !is_deleted[dart_node(x)] && !is_deleted[dart_node(m)])
            res.diagram.pair_darts(remap(x), remap(m));
    }

    // Resolve chains. A chain endpoint is a new-node slot or an external dart
    // reached through a leg whose mate survives.
    auto port_dart = [&](int p) {
        // The dart in the result diagram that a terminal port stands for
        // (only meaningful for new-node slots).
        int i = (p - ports.n_legs) / 4, s = (p - ports.n_legs) % 4;
        return make_dart(res.new_node_index[i], s);
    };
    std::vector<char> visited(ports.total(), 0);

    struct End {
        bool external;
        Dart dart;  // result-diagram dart
        int port;   // entry port
    };
    std::vector<End> starts;
    for (int p = ports.n_legs; p < ports.total(); ++p) starts.push_back({false, port_dart(p), p});
    for (int p = 0; p < ports.n_legs; ++p) {
        Dart mate = d.mate(port_leg[p]);
        if (!is_deleted[dart_node(mate)]) starts.push_back({true, remap(mate), p});
    }

    for (const End& start : starts) {
        if (visited[start.port]) continue;
        visited[start.port] = 1;
        int p = m1[start.port];
        Dart other = -1;
        while (true) {
            visited[p] = 1;
            if (p >= ports.n_legs) {  // new-node slot terminates the chain
                other = port_dart(p);
                break;
            }
            Dart mate = d.mate(port_leg[p]);
            if (!is_deleted[dart_node(mate)]) {  // external attachment terminates
                other = remap(mate);
                break;
            }
            auto it = ports.leg_port.find(mate);
            if (it == ports.leg_port.end()) throw RuleMismatch("chain ran into an unreferenced dart");
            visited[it->second] = 1;
            p = m1[it->second];
        }
        res.diagram.pair_darts(start.dart, other);
    }

    // Remaining unvisited ports form closed chains: each becomes a circle.
    for (int p = 0; p < ports.total(); ++p) {
        if (visited[p]) continue;
        ++res.closed_circles;
        int q = p;
        while (!visited[q]) {
            visited[q] = 1;
            int r = m1[q];
            visited[r] = 1;
            if (r >= ports.n_legs) throw RuleMismatch("closed chain through a new node");
            q = ports.leg_port.at(d.mate(port_leg[r]));
        }
    }
    res.diagram.add_free_circles(res.closed_circles);
    return res;
}

}  // namespace kv

#include "kv/diagram.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace kv {

int Diagram::crossing_count() const {
    int n = 0;
    for (auto k : kinds_)
        if (k == NodeKind::Crossing) ++n;
    return n;
}

int Diagram::vertex_count() const { return node_count() - crossing_count(); }

int Diagram::add_node(NodeKind k) {
    kinds_.push_back(k);
    mate_.resize(kinds_.size() * 4, -1);
    return node_count() - 1;
}

void Diagram::pair_darts(Dart d1, Dart d2) {
    mate_[d1] = d2;
    mate_[d2] = d1;
}

void Diagram::validate() const {
    for (Dart d = 0; d < dart_count(); ++d) {
        if (mate_[d] < 0 || mate_[d] >= dart_count() || mate_[d] == d || mate_[mate_[d]] != d)
            throw ParseError(ParseError::Kind::Genus, 0, "pairing is not a perfect matching");
    }
    if (free_circles_ < 0) throw ParseError(ParseError::Kind::Genus, 0, "negative circle count");
    auto comp = node_components(*this);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> vcount(ncomp, 0), fcount(ncomp, 0);
    for (int n = 0; n < node_count(); ++n) ++vcount[comp[n]];
    for (const Face& f : faces(*this)) ++fcount[comp[dart_node(f.front())]];
    for (int c = 0; c < ncomp; ++c) {
        int euler = vcount[c] - 2 * vcount[c] + fcount[c];  // E = 2V for 4-valent
        if (euler != 2)
            throw ParseError(ParseError::Kind::Genus, 0,
                             "rotation system is not planar (V-E+F = " + std::to_string(euler) + ")");
    }
}

std::vector<Face> faces(const Diagram& d) {
    std::vector<Face> result;
    std::vector<char> seen(d.dart_count(), 0);
    for (Dart start = 0; start < d.dart_count(); ++start) {
        if (seen[start]) continue;
        Face f;
        Dart x = start;
        do {
            seen[x] = 1;
            f.push_back(x);
            x = face_next(d, x);
        } while (x != start);
        result.push_back(std::move(f));
    }
    return result;
}

std::vector<Circuit> circuits(const Diagram& d) {
    std::vector<Circuit> result;
    std::vector<char> used(d.dart_count(), 0);
    for (Dart start = 0; start < d.dart_count(); ++start) {
        if (used[start]) continue;
        Circuit c;
        Dart x = start;
        do {
            used[x] = 1;
            c.departures.push_back(x);
            x = walk_next(d, x);
        } while (x != start);
        // Mark the reverse traversal as used too: the reverse walk departs the
        // mates of this walk's departures.
        for (Dart dep : c.departures) used[d.mate(dep)] = 1;
        result.push_back(std::move(c));
    }
    for (int i = 0; i < d.free_circles(); ++i) result.push_back(Circuit{{}, true});
    return result;
}

int twist_number(const Diagram& d) {
    int total = 0;
    for (const Circuit& c : circuits(d)) {
        if (c.trivial_circle) continue;
        // Departure slots present at each crossing along this circuit.
        std::map<int, std::vector<int>> slots_at;
        for (Dart dep : c.departures)
            if (d.is_crossing(dart_node(dep))) slots_at[dart_node(dep)].push_back(dart_slot(dep));
        for (const auto& [node, slots] : slots_at) {
            if (slots.size() != 2) continue;  // crossing shared with another circuit
            int du = -1, dover = -1;
            for (int s : slots) (s % 2 == 0 ? du : dover) = s;
            if (du < 0 || dover < 0) continue;  // both passages on one strand cannot happen
            total += ((dover - du + 4) % 4 == 1) ? 1 : -1;
        }
    }
    return total;
}

std::vector<int> node_components(const Diagram& d) {
    std::vector<int> parent(d.node_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (Dart x = 0; x < d.dart_count(); ++x) {
        int a = find(dart_node(x)), b = find(dart_node(d.mate(x)));
        if (a != b) parent[a] = b;
    }
    std::vector<int> id(d.node_count(), -1);
    int next = 0;
    for (int n = 0; n < d.node_count(); ++n) {
        int r = find(n);
        if (id[r] < 0) id[r] = next++;
    }
    std::vector<int> out(d.node_count());
    for (int n = 0; n < d.node_count(); ++n) out[n] = id[find(n)];
    return out;
}

int component_count(const Diagram& d) {
    auto comp = node_components(d);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    return ncomp + d.free_circles();
}

namespace {

// BFS encoding rooted at one dart; captures kinds, crossing entry parity and
// the full pairing relative to per-node base slots.
std::vector<int> encode_from(const Diagram& d, Dart root) {
    std::vector<int> id(d.node_count(), -1);
    std::vector<int> base(d.node_count(), 0);
    std::vector<int> order;
    id[dart_node(root)] = 0;
    base[dart_node(root)] = dart_slot(root);
    order.push_back(dart_node(root));
    std::vector<int> stream;
    for (size_t i = 0; i < order.size(); ++i) {
        int n = order[i];
        stream.push_back(d.is_crossing(n) ? 1 : 0);
        if (d.is_crossing(n)) stream.push_back(base[n] & 1);
        for (int rel = 0; rel < 4; ++rel) {
            Dart m = d.mate(make_dart(n, (base[n] + rel) & 3));
            int mn = dart_node(m);
            if (id[mn] < 0) {
                id[mn] = static_cast<int>(order.size());
                base[mn] = dart_slot(m);
                order.push_back(mn);
            }
            stream.push_back(id[mn]);
            stream.push_back((dart_slot(m) - base[mn] + 4) & 3);
        }
    }
    return stream;
}

}  // namespace

std::string canonical_code(const Diagram& d) {
    auto comp = node_components(d);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> best(ncomp);
    for (Dart root = 0; root < d.dart_count(); ++root) {
        int c = comp[dart_node(root)];
        auto enc = encode_from(d, root);
        if (best[c].empty() || enc < best[c]) best[c] = std::move(enc);
    }
    std::sort(best.begin(), best.end());
    std::ostringstream out;
    for (const auto& enc : best) {
        for (int v : enc) out << v << ',';
        out << ';';
    }
    out << 'O' << d.free_circles();
    return out.str();
}

Diagram parse(const std::string& text) {
    Diagram d;
    std::map<long long, std::pair<Dart, int>> open_labels;  // label -> (first dart, line)
    std::map<long long, int> label_uses;
    bool saw_circles = false;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "V" || tag == "X") {
            long long labels[4];
            for (int i = 0; i < 4; ++i) {
                if (!(ls >> labels[i]) || labels[i] <= 0)
                    throw ParseError(ParseError::Kind::Syntax, line_no,
                                     "expected four positive edge labels after " + tag);
            }
            std::string extra;
            if (ls >> extra)
                throw ParseError(ParseError::Kind::Syntax, line_no, "trailing tokens: " + extra);
            int node = d.add_node(tag == "X" ? NodeKind::Crossing : NodeKind::RigidVertex);
            for (int i = 0; i < 4; ++i) {
                Dart here = make_dart(node, i);
                auto [it, inserted] = open_labels.try_emplace(labels[i], std::make_pair(here, line_no));
                ++label_uses[labels[i]];
                if (!inserted) {
                    if (label_uses[labels[i]] > 2)
                        throw ParseError(ParseError::Kind::Label, line_no,
                                         "edge label " + std::to_string(labels[i]) + " used more than twice");
                    d.pair_darts(it->second.first, here);
                }
            }
        } else if (tag == "O") {
            long long n;
            if (!(ls >> n) || n < 0)
                throw ParseError(ParseError::Kind::Syntax, line_no, "expected a nonnegative count after O");
            if (saw_circles)
                throw ParseError(ParseError::Kind::Syntax, line_no, "more than one O line");
            saw_circles = true;
            d.add_free_circles(static_cast<int>(n));
        } else {
            throw ParseError(ParseError::Kind::Syntax, line_no, "unknown tag: " + tag);
        }
    }
    for (const auto& [label, uses] : label_uses) {
        if (uses != 2)
            throw ParseError(ParseError::Kind::Label, open_labels[label].second,
                             "edge label " + std::to_string(label) + " used " + std::to_string(uses) +
                                 " times (expected 2)");
    }
    d.validate();
    return d;
}

std::string serialize(const Diagram& d) {
    // Emit nodes in the discovery order of the canonical encoding, one
    // component at a time (components in canonical-code order); crossings are
    // emitted from an even base slot so that the under-strand lands on
    // positions 0 and 2 of the X line.
    auto comp = node_components(d);
    int ncomp = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::pair<std::vector<int>, Dart>> best(ncomp, {{}, -1});
    for (Dart root = 0; root < d.dart_count(); ++root) {
        int c = comp[dart_node(root)];
        auto enc = encode_from(d, root);
        if (best[c].second < 0 || enc < best[c].first) best[c] = {std::move(enc), root};
    }
    std::sort(best.begin(), best.end());

    std::ostringstream out;
    std::map<std::pair<Dart, Dart>, long long> edge_labels;
    long long next_label = 1;
    auto label_of = [&](Dart x) {
        Dart m = d.mate(x);
        auto key = std::minmax(x, m);
        auto [it, inserted] = edge_labels.try_emplace({key.first, key.second}, next_label);
        if (inserted) ++next_label;
        return it->second;
    };
    for (const auto& [enc, root] : best) {
        if (root < 0) continue;
        // Re-run the BFS to recover discovery order and bases.
        std::vector<int> id(d.node_count(), -1);
        std::vector<int> base(d.node_count(), 0);
        std::vector<int> order;
        id[dart_node(root)] = 0;
        base[dart_node(root)] = dart_slot(root);
        order.push_back(dart_node(root));
        for (size_t i = 0; i < order.size(); ++i) {
            int n = order[i];
            for (int rel = 0; rel < 4; ++rel) {
                Dart m = d.mate(make_dart(n, (base[n] + rel) & 3));
                int mn = dart_node(m);
                if (id[mn] < 0) {
                    id[mn] = static_cast<int>(order.size());
                    base[mn] = dart_slot(m);
                    order.push_back(mn);
                }
            }
        }
        for (int n : order) {
            int b = base[n];
            if (d.is_crossing(n) && (b & 1)) b = (b + 1) & 3;
            out << (d.is_crossing(n) ? "X" : "V");
            for (int rel = 0; rel < 4; ++rel) out << ' ' << label_of(make_dart(n, (b + rel) & 3));
            out << '\n';
        }
    }
    if (d.free_circles() > 0) out << "O " << d.free_circles() << '\n';
    return out.str();
}

Diagram disjoint_union(const Diagram& d1, const Diagram& d2) {
    Diagram d = d1;
    int offset = d1.node_count();
    for (int n = 0; n < d2.node_count(); ++n) d.add_node(d2.kind(n));
    for (Dart x = 0; x < d2.dart_count(); ++x) {
        Dart m = d2.mate(x);
        if (x < m) d.pair_darts(x + offset * 4, m + offset * 4);
    }
    d.add_free_circles(d2.free_circles());
    return d;
}

}  // namespace kv

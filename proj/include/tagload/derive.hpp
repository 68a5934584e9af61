#pragma once

// Brute-force derivation enumerator. Generates every complete,
// dominance-valid derived tree within a length/adjunction budget and
// collects the yields; serves as the independent oracle that the automaton
// is checked against.

#include "grammar.hpp"

namespace tagload {

struct OracleOptions {
    int max_len = 6;
    int max_adjunctions = 6;
};

namespace detail {

inline std::string serialize(const DerivedTree& d, int at) {
    const DerivedNode& n = d.nodes[size_t(at)];
    std::string s = "(" + n.label + "/" + std::to_string(n.src_tree) + "." +
                    std::to_string(n.src_node) + "." + std::to_string(n.instance) +
                    (n.lexeme.empty() ? "" : "=" + n.lexeme) +
                    (n.mark == Mark::Subst && n.children.empty() ? "?" : "") +
                    (n.hosted_adjunction ? "!" : "");
    for (int c : n.children) s += serialize(d, c);
    return s + ")";
}

inline int overt_count(const DerivedTree& d) {
    int c = 0;
    for (auto& n : d.nodes)
        if (!n.lexeme.empty()) c++;
    return c;
}

}  // namespace detail

class DerivationOracle {
public:
    DerivationOracle(const Grammar& g, OracleOptions opt = {}) : g_(g), opt_(opt) {
        for (auto& t : g.trees) {
            for (int s : t.subst_nodes) {
                bool seen = false;
                for (auto& tok : nominals_)
                    if (tok.first == t.node(s).id) seen = true;
                if (!seen) nominals_.push_back({t.node(s).id, t.node(s).cas});
            }
        }
    }

    // all yields of complete derivations rooted in a start category
    std::set<std::vector<std::string>> generate_strings() const {
        std::set<std::vector<std::string>> out;
        std::set<std::string> visited;
        int instance = 0;
        for (size_t t = 0; t < g_.trees.size(); t++) {
            if (g_.trees[t].kind != TreeKind::Initial) continue;
            DerivedTree d = DerivedTree::from_elementary(g_.trees[t], int(t), instance);
            expand(d, 0, visited, out);
        }
        return out;
    }

    bool derives(const std::vector<std::string>& s) const {
        auto all = generate_strings();
        return all.count(s) > 0;
    }

private:
    const Grammar& g_;
    OracleOptions opt_;
    std::vector<std::pair<std::string, CaseTag>> nominals_;

    bool complete(const DerivedTree& d) const {
        if (!d.open_subst().empty() || d.has_foot()) return false;
        if (!g_.is_start_label(d.nodes[size_t(d.root)].label)) return false;
        return check_dominance(d, g_);
    }

    void expand(const DerivedTree& d, int adjunctions, std::set<std::string>& visited,
                std::set<std::vector<std::string>>& out) const {
        auto open = d.open_subst();
        int mass = detail::overt_count(d) + int(open.size());
        if (mass > opt_.max_len) return;
        std::string key = detail::serialize(d, d.root);
        if (!visited.insert(key).second) return;

        if (open.empty() && complete(d)) {
            auto y = d.yield();
            if (int(y.size()) <= opt_.max_len) out.insert(y);
        }

        // substitution of an atomic nominal into each open slot
        for (int slot : open) {
            for (auto& [tok, cas] : nominals_) {
                if (!case_matches(d.nodes[size_t(slot)].cas, cas)) continue;
                expand(substitute_token(d, slot, tok, cas), adjunctions, visited, out);
            }
        }
        // adjunction of each auxiliary at each free site
        if (adjunctions < opt_.max_adjunctions) {
            for (size_t n = 0; n < d.nodes.size(); n++) {
                const DerivedNode& dn = d.nodes[n];
                if (dn.mark != Mark::Interior || dn.children.empty() || dn.hosted_adjunction)
                    continue;
                for (size_t a = 0; a < g_.trees.size(); a++) {
                    const ElementaryTree& at = g_.trees[a];
                    if (at.kind != TreeKind::Auxiliary) continue;
                    if (at.node(at.root).label != dn.label) continue;
                    int inst = next_instance(d);
                    expand(adjoin(d, int(n), at, int(a), inst), adjunctions + 1, visited, out);
                }
            }
        }
    }

    static int next_instance(const DerivedTree& d) {
        int mx = -1;
        for (auto& n : d.nodes) mx = std::max(mx, n.instance);
        return mx + 1;
    }
};

inline std::set<std::vector<std::string>> generate_strings(const Grammar& g, int max_len,
                                                           int max_adjunctions = 6) {
    OracleOptions o;
    o.max_len = max_len;
    o.max_adjunctions = max_adjunctions;
    return DerivationOracle(g, o).generate_strings();
}

}  // namespace tagload

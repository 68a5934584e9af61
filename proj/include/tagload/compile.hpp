#pragma once

// Grammar-to-automaton compilation. Trees are exploded into context-free
// rules (one per node with daughters, plus terminal rewrites for lexical
// leaves); the rule set pairs every adjoinable node with every auxiliary
// tree of matching label, assigns quasi-categorial labels to verbal
// projections, and carries the licensing table for empty-head positing.

#include <cassert>
#include <sstream>

#include "grammar.hpp"

namespace tagload {

// --- context-free explosion -------------------------------------------------

struct CFSym {
    bool terminal = false;
    std::string text;   // lexeme for terminals, node id otherwise
    int node = -1;
};

struct CFRule {
    int tree = -1;
    int lhs = -1;                // node index
    std::vector<CFSym> rhs;
};

inline std::vector<CFRule> explode(const ElementaryTree& t, int tree_idx = -1) {
    std::vector<CFRule> out;
    for (size_t i = 0; i < t.nodes.size(); i++) {
        const TreeNode& n = t.nodes[i];
        if (!n.children.empty()) {
            CFRule r;
            r.tree = tree_idx;
            r.lhs = int(i);
            for (int c : n.children) {
                CFSym s;
                s.text = t.node(c).id;
                s.node = c;
                r.rhs.push_back(s);
            }
            out.push_back(r);
        } else if (!n.lexeme.empty()) {
            CFRule r;
            r.tree = tree_idx;
            r.lhs = int(i);
            CFSym s;
            s.terminal = true;
            s.text = n.lexeme;
            r.rhs.push_back(s);
            out.push_back(r);
        }
    }
    return out;
}

// --- per-tree analysis -------------------------------------------------------

enum class TreeMode {
    Plain,      // no lexical head projection: node-labelled symbols, eager foot push
    Verbal,     // anchored verbal projection: quasi-categorial symbols
    Function    // complementizer/auxiliary word: integrates into a host projection
};

struct PendingSlot {
    std::string render;   // slot node id (doubles as the surface token)
    std::string label;
    CaseTag cas = CaseTag::None;
    bool index = false;   // true for requirements contributed by set siblings
    int slot_tree = -1;
    int slot_node = -1;
};

// Static analysis of one elementary tree as seen by the automaton.
struct TreeInfo {
    int tree = -1;
    TreeMode mode = TreeMode::Plain;
    int head_leaf = -1;             // anchor, or null head when present
    bool has_null_head = false;
    std::vector<int> spine;         // head leaf up to root
    bool foot_right_edge = false;
    // pending requirements per node: slots of this tree not dominated by the
    // node, plus (for set members) the nominal requirements of sibling trees
    std::vector<std::vector<PendingSlot>> pending;
    // null-subtree analysis (verbal trees with a head trace)
    int null_subtree = -1;          // maximal empty-yield subtree around the trace
    bool relabel_posit = false;     // sister of the null subtree is the nominal slot
    int posit_result_node = -1;     // node the posited projection starts at
    int posit_sister_slot = -1;     // slot consumed by the fused unwrap (relabel form)
    int posit_site_rule_lhs = -1;   // foot-parent rule (push form)
};

inline bool on_path_to_root(const ElementaryTree& t, int from, int node) {
    int n = from;
    while (n != -1) {
        if (n == node) return true;
        n = t.node(n).parent;
    }
    return false;
}

inline TreeInfo analyze_tree(const Grammar& g, int tree_idx) {
    const ElementaryTree& t = g.trees[size_t(tree_idx)];
    TreeInfo info;
    info.tree = tree_idx;
    info.has_null_head = t.null_head >= 0;
    info.foot_right_edge = t.foot_is_right_edge();

    bool verbal_anchor = t.anchor >= 0 && t.node(t.anchor).label == "V";
    bool function_anchor = t.anchor >= 0 && t.node(t.anchor).wclass == WordClass::Function;
    int set = g.set_of_tree(tree_idx);

    if (function_anchor) info.mode = TreeMode::Function;
    else if (verbal_anchor || info.has_null_head || set >= 0) info.mode = TreeMode::Verbal;
    else info.mode = TreeMode::Plain;

    info.head_leaf = info.has_null_head ? t.null_head : t.anchor;
    if (info.head_leaf >= 0) {
        int n = info.head_leaf;
        while (n != -1) {
            info.spine.push_back(n);
            n = t.node(n).parent;
        }
    }

    // pending requirements: own slots not dominated, then set-sibling slots
    info.pending.resize(t.nodes.size());
    for (size_t n = 0; n < t.nodes.size(); n++) {
        for (int s : t.subst_nodes) {
            if (!t.dominates(int(n), s)) {
                PendingSlot p;
                p.render = t.node(s).id;
                p.label = t.node(s).label;
                p.cas = t.node(s).cas;
                p.slot_tree = tree_idx;
                p.slot_node = s;
                info.pending[n].push_back(p);
            }
        }
        if (set >= 0) {
            for (auto& m : g.sets[size_t(set)].members) {
                int mi = g.find_tree(m);
                if (mi == tree_idx) continue;
                const ElementaryTree& mt = g.trees[size_t(mi)];
                // only requirement-bearing siblings without a head of their own
                if (mt.anchor >= 0 || mt.null_head >= 0) continue;
                for (int s : mt.subst_nodes) {
                    PendingSlot p;
                    p.render = mt.node(s).id;
                    p.label = mt.node(s).label;
                    p.cas = mt.node(s).cas;
                    p.index = true;
                    p.slot_tree = mi;
                    p.slot_node = s;
                    info.pending[n].push_back(p);
                }
            }
        }
    }

    // headed null-subtree: the highest ancestor of the trace whose whole
    // yield is empty
    if (info.has_null_head) {
        int n = t.null_head;
        int best = n;
        while (t.node(n).parent != -1) {
            int p = t.node(n).parent;
            // does p's subtree have any overt or slot material?
            bool empty_yield = true;
            std::vector<int> fr;
            t.compute_frontier(p, fr);
            for (int leaf : fr)
                if (t.node(leaf).mark != Mark::NullHead) empty_yield = false;
            if (!empty_yield) break;
            best = p;
            n = p;
        }
        info.null_subtree = best;
        int parent = t.node(best).parent;
        if (parent >= 0) {
            const TreeNode& pr = t.node(parent);
            bool sister_slot = false, sister_foot = false;
            int slot = -1;
            for (int c : pr.children) {
                if (c == best) continue;
                if (t.node(c).mark == Mark::Subst) { sister_slot = true; slot = c; }
                if (t.node(c).mark == Mark::Foot) sister_foot = true;
            }
            if (sister_slot && !sister_foot) {
                info.relabel_posit = true;
                info.posit_result_node = parent;   // fused slot unwrap lands here
                info.posit_sister_slot = slot;
            } else if (sister_foot) {
                info.relabel_posit = false;
                info.posit_result_node = parent;   // fused foot unwrap lands here
                info.posit_site_rule_lhs = parent;
            }
        }
    }
    return info;
}

// --- quasi-categorial labels --------------------------------------------------

struct SubcatLabel {
    std::string head;           // lexeme, or category for an empty head
    std::string tree_id;
    bool head_overt = true;
    std::vector<PendingSlot> pending;

    std::string render() const {
        std::string s = "V_" + tree_id;
        if (!head_overt) s += "^h-";
        s += "{";
        for (size_t i = 0; i < pending.size(); i++) {
            if (i) s += ",";
            s += pending[i].label + "." + to_string(pending[i].cas);
        }
        s += "}";
        return s;
    }
};

// Label for a node on the head projection path.
inline SubcatLabel subcat_label(const Grammar& g, int tree_idx, int node) {
    TreeInfo info = analyze_tree(g, tree_idx);
    const ElementaryTree& t = g.trees[size_t(tree_idx)];
    bool on_spine = std::find(info.spine.begin(), info.spine.end(), node) != info.spine.end();
    // the raised overt head of a trace-headed tree also carries a label
    bool is_raised_anchor = info.has_null_head && node == t.anchor;
    if (!on_spine && !is_raised_anchor && node != t.root)
        throw std::runtime_error("subcat_label: node not on the head projection path");
    SubcatLabel l;
    l.tree_id = t.id;
    l.head = t.anchor >= 0 ? t.node(t.anchor).lexeme : t.node(info.head_leaf).label;
    l.head_overt = !(info.has_null_head && node != t.root);
    l.pending = info.pending[size_t(node)];
    return l;
}

// --- rule set -----------------------------------------------------------------

struct Rule {
    enum Kind {
        Shift,           // one per terminal token
        Unwrap,          // one per exploded context-free rule
        Push,            // foot push, one per (adjoinable node, auxiliary) pair
        Pop,             // one per tree root
        Posit,           // one per headed null-subtree, guarded by licensing
        Integrate        // function-word adjunction into a host projection
    } kind = Shift;
    int tree = -1;
    int node = -1;       // lhs node / site node / root
    int aux = -1;        // partner tree for Push pairs
    std::string token;   // for shifts
    std::string detail;
};

struct RuleSet {
    const Grammar* grammar = nullptr;
    std::vector<Rule> rules;
    std::vector<TreeInfo> tree_info;
    std::vector<CFRule> cf_rules;
    bool pass_enabled = false;

    const TreeInfo& info(int tree) const { return tree_info.at(size_t(tree)); }

    std::string dump() const {
        std::vector<std::string> lines;
        for (auto& r : rules) {
            std::ostringstream os;
            switch (r.kind) {
                case Rule::Shift: os << "shift - " << r.token; break;
                case Rule::Unwrap:
                    os << "unwrap " << grammar->trees[size_t(r.tree)].id << ":"
                       << grammar->trees[size_t(r.tree)].node(r.node).id << " " << r.detail;
                    break;
                case Rule::Push:
                    os << "push " << grammar->trees[size_t(r.tree)].id << ":"
                       << grammar->trees[size_t(r.tree)].node(r.node).id << " foot-of "
                       << grammar->trees[size_t(r.aux)].id;
                    break;
                case Rule::Pop:
                    os << "pop " << grammar->trees[size_t(r.tree)].id << ":"
                       << grammar->trees[size_t(r.tree)].node(r.node).id << " root";
                    break;
                case Rule::Posit:
                    os << "posit " << grammar->trees[size_t(r.tree)].id << ":"
                       << grammar->trees[size_t(r.tree)].node(r.node).id << " " << r.detail;
                    break;
                case Rule::Integrate:
                    os << "integrate " << grammar->trees[size_t(r.tree)].id << ":"
                       << grammar->trees[size_t(r.tree)].node(r.node).id << " " << r.detail;
                    break;
            }
            lines.push_back(os.str());
        }
        std::sort(lines.begin(), lines.end());
        std::string out;
        for (auto& l : lines) out += l + "\n";
        return out;
    }
};

inline RuleSet compile(const Grammar& g) {
    RuleSet rs;
    rs.grammar = &g;
    rs.pass_enabled = !g.sets.empty();

    for (size_t t = 0; t < g.trees.size(); t++) {
        rs.tree_info.push_back(analyze_tree(g, int(t)));
        auto cf = explode(g.trees[t], int(t));
        rs.cf_rules.insert(rs.cf_rules.end(), cf.begin(), cf.end());
    }

    // shifts: one per terminal
    for (auto& tok : g.terminals()) {
        Rule r;
        r.kind = Rule::Shift;
        r.token = tok;
        rs.rules.push_back(r);
    }
    // unwraps: one per context-free rule
    for (auto& cf : rs.cf_rules) {
        Rule r;
        r.kind = Rule::Unwrap;
        r.tree = cf.tree;
        r.node = cf.lhs;
        std::string rhs;
        for (auto& s : cf.rhs) rhs += (rhs.empty() ? "" : " ") + s.text;
        r.detail = "-> " + rhs;
        rs.rules.push_back(r);
    }
    // pushes: every (interior node, auxiliary) pair with matching labels
    for (size_t host = 0; host < g.trees.size(); host++) {
        const ElementaryTree& ht = g.trees[host];
        for (size_t n = 0; n < ht.nodes.size(); n++) {
            const TreeNode& hn = ht.nodes[n];
            if (hn.mark == Mark::Subst || hn.mark == Mark::Anchor || hn.mark == Mark::Foot)
                continue;
            if (hn.children.empty() && hn.mark != Mark::NullHead) continue;
            for (size_t aux = 0; aux < g.trees.size(); aux++) {
                const ElementaryTree& at = g.trees[aux];
                if (at.kind != TreeKind::Auxiliary || at.foot < 0) continue;
                if (at.node(at.foot).label != hn.label) continue;
                Rule r;
                if (rs.tree_info[aux].mode == TreeMode::Function) {
                    r.kind = Rule::Integrate;
                    r.detail = "host-label " + hn.label;
                } else {
                    r.kind = Rule::Push;
                }
                r.tree = int(host);
                r.node = int(n);
                r.aux = int(aux);
                rs.rules.push_back(r);
            }
        }
    }
    // pops: one per root
    for (size_t t = 0; t < g.trees.size(); t++) {
        Rule r;
        r.kind = Rule::Pop;
        r.tree = int(t);
        r.node = g.trees[t].root;
        rs.rules.push_back(r);
    }
    // posits: one per headed null-subtree
    for (size_t t = 0; t < g.trees.size(); t++) {
        const TreeInfo& info = rs.tree_info[t];
        if (!info.has_null_head || info.null_subtree < 0) continue;
        Rule r;
        r.kind = Rule::Posit;
        r.tree = int(t);
        r.node = info.null_subtree;
        r.detail = info.relabel_posit ? "relabel" : "push";
        rs.rules.push_back(r);
    }
    return rs;
}

inline size_t count_rules(const RuleSet& rs, Rule::Kind k) {
    size_t c = 0;
    for (auto& r : rs.rules)
        if (r.kind == k) c++;
    return c;
}

}  // namespace tagload

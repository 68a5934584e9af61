#pragma once

// Tree adjoining grammar objects: elementary trees, multi-component tree
// sets with dominance links, derived trees, and the two combining
// operations (substitution, adjunction).

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tagload {

enum class Mark { Interior, Anchor, Subst, Foot, NullHead };
enum class CaseTag { None, Nom, Acc, Dat };
enum class WordClass { Content, Function };
enum class TreeKind { Initial, Auxiliary };

inline std::string to_string(Mark m) {
    switch (m) {
        case Mark::Interior: return "interior";
        case Mark::Anchor: return "anchor";
        case Mark::Subst: return "subst";
        case Mark::Foot: return "foot";
        case Mark::NullHead: return "nullhead";
    }
    return "?";
}

inline std::string to_string(CaseTag c) {
    switch (c) {
        case CaseTag::None: return "-";
        case CaseTag::Nom: return "NOM";
        case CaseTag::Acc: return "ACC";
        case CaseTag::Dat: return "DAT";
    }
    return "?";
}

inline bool case_matches(CaseTag want, CaseTag have) {
    // A missing tag is a wildcard.
    return want == CaseTag::None || have == CaseTag::None || want == have;
}

struct TreeNode {
    std::string id;
    std::string label;
    int parent = -1;             // node index, -1 for root
    std::vector<int> children;   // order = surface order
    Mark mark = Mark::Interior;
    std::string lexeme;          // nonempty iff the node is a terminal leaf
    CaseTag cas = CaseTag::None;
    WordClass wclass = WordClass::Content;
};

struct ElementaryTree {
    std::string id;
    TreeKind kind = TreeKind::Initial;
    std::vector<TreeNode> nodes;
    int root = -1;

    // filled by finalize()
    int foot = -1;
    int anchor = -1;
    int null_head = -1;
    std::vector<int> subst_nodes;
    std::vector<int> frontier;   // left-to-right leaf order

    const TreeNode& node(int i) const { return nodes.at(size_t(i)); }

    int find_node(const std::string& id_) const {
        for (size_t i = 0; i < nodes.size(); i++)
            if (nodes[i].id == id_) return int(i);
        return -1;
    }

    bool is_leaf(int i) const { return node(i).children.empty(); }

    void compute_frontier(int at, std::vector<int>& out) const {
        if (is_leaf(at)) {
            out.push_back(at);
            return;
        }
        for (int c : node(at).children) compute_frontier(c, out);
    }

    void finalize() {
        foot = anchor = null_head = -1;
        subst_nodes.clear();
        frontier.clear();
        for (size_t i = 0; i < nodes.size(); i++) {
            if (nodes[i].parent == -1) root = int(i);
        }
        if (root >= 0) compute_frontier(root, frontier);
        for (size_t i = 0; i < nodes.size(); i++) {
            switch (nodes[i].mark) {
                case Mark::Foot: if (foot < 0) foot = int(i); break;
                case Mark::Anchor: if (anchor < 0) anchor = int(i); break;
                case Mark::NullHead: if (null_head < 0) null_head = int(i); break;
                case Mark::Subst: subst_nodes.push_back(int(i)); break;
                default: break;
            }
        }
    }

    // true iff the foot is the last element of the tree frontier, i.e.
    // no overt or covert material of this tree follows the foot.
    bool foot_is_right_edge() const {
        if (foot < 0 || frontier.empty()) return false;
        return frontier.back() == foot;
    }

    bool dominates(int upper, int lower) const {
        int n = lower;
        while (n != -1) {
            if (n == upper) return true;
            n = node(n).parent;
        }
        return false;
    }
};

struct DomLink {
    std::string upper_tree, upper_node;
    std::string lower_tree, lower_node;
};

struct TreeSet {
    std::string id;
    std::vector<std::string> members;
    std::vector<DomLink> links;
};

struct License {
    bool by_lexeme = false;   // else by category label
    std::string key;
    std::string posits;       // category of the null head it licenses
};

// Surface token classification.
struct TokenInfo {
    enum Kind { AnchorLexeme, Nominal, Unknown } kind = Unknown;
    CaseTag cas = CaseTag::None;
    WordClass wclass = WordClass::Content;
    std::string label;               // node label (anchors) or slot label (nominals)
    std::vector<int> anchor_trees;   // trees anchored by this lexeme
};

struct Grammar {
    std::string name;
    std::vector<ElementaryTree> trees;
    std::vector<TreeSet> sets;
    std::vector<License> licenses;
    std::vector<std::string> start_labels;   // defaults to {S, VP}

    int find_tree(const std::string& id) const {
        for (size_t i = 0; i < trees.size(); i++)
            if (trees[i].id == id) return int(i);
        return -1;
    }

    int set_of_tree(int tree) const {
        for (size_t s = 0; s < sets.size(); s++)
            for (auto& m : sets[s].members)
                if (find_tree(m) == tree) return int(s);
        return -1;
    }

    bool is_start_label(const std::string& l) const {
        if (start_labels.empty()) return l == "S" || l == "VP";
        return std::find(start_labels.begin(), start_labels.end(), l) != start_labels.end();
    }

    // Every surface token is either an anchor lexeme or the id of a
    // substitution node (the slot id doubles as the nominal token that can
    // fill slots of its case).
    TokenInfo token_info(const std::string& tok) const {
        TokenInfo ti;
        for (size_t t = 0; t < trees.size(); t++) {
            for (auto& n : trees[t].nodes) {
                if (!n.lexeme.empty() && n.lexeme == tok) {
                    ti.kind = TokenInfo::AnchorLexeme;
                    ti.label = n.label;
                    ti.wclass = n.wclass;
                    ti.anchor_trees.push_back(int(t));
                }
            }
        }
        if (ti.kind == TokenInfo::AnchorLexeme) return ti;
        for (auto& t : trees) {
            for (int s : t.subst_nodes) {
                if (t.node(s).id == tok) {
                    ti.kind = TokenInfo::Nominal;
                    ti.cas = t.node(s).cas;
                    ti.label = t.node(s).label;
                    return ti;
                }
            }
        }
        return ti;
    }

    std::vector<std::string> terminals() const {
        std::vector<std::string> out;
        auto add = [&](const std::string& s) {
            if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
        };
        for (auto& t : trees) {
            for (auto& n : t.nodes)
                if (!n.lexeme.empty()) add(n.lexeme);
            for (int s : t.subst_nodes) add(t.node(s).id);
        }
        return out;
    }

    bool token_licenses(const std::string& tok, const std::string& posits) const {
        TokenInfo ti = token_info(tok);
        for (auto& lic : licenses) {
            if (lic.posits != posits) continue;
            if (lic.by_lexeme && lic.key == tok) return true;
            if (!lic.by_lexeme && ti.kind == TokenInfo::AnchorLexeme && lic.key == ti.label)
                return true;
        }
        return false;
    }
};

// --- validation ------------------------------------------------------------

struct Violation {
    std::string code;
    std::string where;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

inline ValidationReport validate_grammar(const Grammar& g) {
    ValidationReport rep;
    auto add = [&](const std::string& code, const std::string& where, const std::string& detail) {
        rep.violations.push_back({code, where, detail});
    };

    std::set<std::string> tree_ids;
    for (auto& t : g.trees) {
        if (!tree_ids.insert(t.id).second) add("duplicate-id", t.id, "tree id reused");

        int feet = 0, anchors = 0, nullheads = 0;
        std::set<std::string> node_ids;
        for (size_t i = 0; i < t.nodes.size(); i++) {
            const TreeNode& n = t.nodes[i];
            if (!node_ids.insert(n.id).second)
                add("duplicate-id", t.id + ":" + n.id, "node id reused");
            if (n.mark == Mark::Foot) feet++;
            if (n.mark == Mark::Anchor) anchors++;
            if (n.mark == Mark::NullHead) nullheads++;
            if (n.mark == Mark::Anchor && n.lexeme.empty())
                add("anchor-lexeme", t.id + ":" + n.id, "anchor without lexeme");
            if ((n.mark == Mark::Subst || n.mark == Mark::Foot || n.mark == Mark::NullHead) && !n.lexeme.empty())
                add("lexeme-placement", t.id + ":" + n.id, "lexeme on a non-terminal mark");
            if (n.cas != CaseTag::None && n.mark != Mark::Subst && n.lexeme.empty())
                add("case-placement", t.id + ":" + n.id, "case tag off a nominal slot or token");
            if ((n.mark == Mark::Subst || n.mark == Mark::Foot) && !n.children.empty())
                add("tree-shape", t.id + ":" + n.id, "frontier mark on an internal node");
        }
        if (t.kind == TreeKind::Auxiliary) {
            if (feet != 1) add("foot-count", t.id, "auxiliary tree needs exactly one foot");
            else if (t.node(t.foot).label != t.node(t.root).label)
                add("foot-label", t.id, "foot label differs from root label");
        } else if (feet != 0) {
            add("foot-count", t.id, "initial tree with a foot node");
        }
        if (anchors > 1) add("anchor-count", t.id, "more than one anchor");
        if (anchors == 0) {
            bool null_only = nullheads > 0;
            bool in_set = g.set_of_tree(g.find_tree(t.id)) >= 0;
            bool has_lex = false;
            for (auto& n : t.nodes) has_lex = has_lex || !n.lexeme.empty();
            if (!null_only && !in_set && !has_lex)
                add("unanchored", t.id, "tree has no lexical material and is not a set member");
        }
        // connectivity: every non-root node reachable from the root
        if (t.root >= 0) {
            std::vector<int> seen;
            t.compute_frontier(t.root, seen);  // frontier only; do a full walk instead
            std::set<int> reach;
            std::vector<int> stack{t.root};
            while (!stack.empty()) {
                int n = stack.back();
                stack.pop_back();
                if (!reach.insert(n).second) continue;
                for (int c : t.node(n).children) stack.push_back(c);
            }
            if (reach.size() != t.nodes.size())
                add("tree-shape", t.id, "node graph is not a single tree");
        }
    }

    for (auto& s : g.sets) {
        for (auto& m : s.members)
            if (g.find_tree(m) < 0) add("link-endpoint", s.id, "set member " + m + " not a tree");
        for (auto& l : s.links) {
            bool up_in = std::find(s.members.begin(), s.members.end(), l.upper_tree) != s.members.end();
            bool lo_in = std::find(s.members.begin(), s.members.end(), l.lower_tree) != s.members.end();
            if (!up_in || !lo_in) {
                add("link-endpoint", s.id, "dominance link endpoint outside the set");
                continue;
            }
            int ut = g.find_tree(l.upper_tree), lt = g.find_tree(l.lower_tree);
            if (ut < 0 || g.trees[ut].find_node(l.upper_node) < 0 ||
                lt < 0 || g.trees[lt].find_node(l.lower_node) < 0)
                add("link-endpoint", s.id, "dominance link names a missing node");
        }
    }
    return rep;
}

// --- derived trees ---------------------------------------------------------

struct DerivedNode {
    std::string label;
    Mark mark = Mark::Interior;
    std::string lexeme;
    CaseTag cas = CaseTag::None;
    WordClass wclass = WordClass::Content;
    int parent = -1;
    std::vector<int> children;
    int src_tree = -1;   // provenance
    int src_node = -1;
    int instance = -1;   // which use of the source tree
    bool hosted_adjunction = false;
};

struct DerivedTree {
    std::vector<DerivedNode> nodes;
    int root = -1;

    static DerivedTree from_elementary(const ElementaryTree& t, int tree_idx, int instance) {
        DerivedTree d;
        d.nodes.resize(t.nodes.size());
        for (size_t i = 0; i < t.nodes.size(); i++) {
            const TreeNode& n = t.nodes[i];
            DerivedNode& m = d.nodes[i];
            m.label = n.label;
            m.mark = n.mark;
            m.lexeme = n.lexeme;
            m.cas = n.cas;
            m.wclass = n.wclass;
            m.parent = n.parent;
            m.children = n.children;
            m.src_tree = tree_idx;
            m.src_node = int(i);
            m.instance = instance;
        }
        d.root = t.root;
        return d;
    }

    bool dominates(int upper, int lower) const {
        int n = lower;
        while (n != -1) {
            if (n == upper) return true;
            n = nodes[size_t(n)].parent;
        }
        return false;
    }

    void yield_of(int at, std::vector<std::string>& out) const {
        const DerivedNode& n = nodes[size_t(at)];
        if (n.children.empty()) {
            if (!n.lexeme.empty()) out.push_back(n.lexeme);
            return;
        }
        for (int c : n.children) yield_of(c, out);
    }

    std::vector<std::string> yield() const {
        std::vector<std::string> out;
        if (root >= 0) yield_of(root, out);
        return out;
    }

    std::vector<int> open_subst() const {
        std::vector<int> out;
        for (size_t i = 0; i < nodes.size(); i++)
            if (nodes[i].mark == Mark::Subst && nodes[i].children.empty()) out.push_back(int(i));
        return out;
    }

    bool has_foot() const {
        for (auto& n : nodes)
            if (n.mark == Mark::Foot) return true;
        return false;
    }
};

// Fill a substitution slot with a nominal token. NPs are atomic, so the
// filler is a single lexical leaf; case tags must be compatible.
inline DerivedTree substitute_token(const DerivedTree& host, int at, const std::string& token,
                                    CaseTag token_case) {
    const DerivedNode& slot = host.nodes.at(size_t(at));
    if (slot.mark != Mark::Subst) throw std::runtime_error("substitute: not a substitution node");
    if (!slot.children.empty()) throw std::runtime_error("substitute: slot already filled");
    if (!case_matches(slot.cas, token_case)) throw std::runtime_error("substitute: case mismatch");
    DerivedTree out = host;
    DerivedNode leaf;
    leaf.label = token;
    leaf.lexeme = token;
    leaf.cas = token_case;
    leaf.parent = at;
    leaf.mark = Mark::Anchor;
    out.nodes.push_back(leaf);
    out.nodes[size_t(at)].children.push_back(int(out.nodes.size()) - 1);
    return out;
}

// Substitute a full initial tree (used when the filler has structure).
inline DerivedTree substitute(const DerivedTree& host, int at, const ElementaryTree& filler,
                              int filler_idx, int instance) {
    const DerivedNode& slot = host.nodes.at(size_t(at));
    if (slot.mark != Mark::Subst) throw std::runtime_error("substitute: not a substitution node");
    if (filler.kind != TreeKind::Initial) throw std::runtime_error("substitute: filler must be initial");
    if (filler.node(filler.root).label != slot.label)
        throw std::runtime_error("substitute: label mismatch");
    if (!case_matches(slot.cas, filler.node(filler.root).cas))
        throw std::runtime_error("substitute: case mismatch");
    DerivedTree out = host;
    int base = int(out.nodes.size());
    DerivedTree f = DerivedTree::from_elementary(filler, filler_idx, instance);
    for (auto& n : f.nodes) {
        DerivedNode m = n;
        m.parent = n.parent == -1 ? at : n.parent + base;
        for (auto& c : m.children) c += base;
        out.nodes.push_back(m);
    }
    out.nodes[size_t(at)].children.push_back(base + f.root);
    return out;
}

// Adjoin an auxiliary tree at an interior node: excise the subtree, insert
// the auxiliary, reattach the excised subtree at its foot.
inline DerivedTree adjoin(const DerivedTree& host, int at, const ElementaryTree& aux,
                          int aux_idx, int instance) {
    const DerivedNode& site = host.nodes.at(size_t(at));
    if (aux.kind != TreeKind::Auxiliary) throw std::runtime_error("adjoin: tree is not auxiliary");
    if (site.mark == Mark::Subst || site.mark == Mark::Anchor || site.mark == Mark::Foot ||
        site.mark == Mark::NullHead)
        throw std::runtime_error("adjoin: node not adjoinable");
    if (site.hosted_adjunction) throw std::runtime_error("adjoin: node already hosts an adjunction");
    if (aux.node(aux.root).label != site.label) throw std::runtime_error("adjoin: label mismatch");

    DerivedTree out = host;
    int base = int(out.nodes.size());
    DerivedTree a = DerivedTree::from_elementary(aux, aux_idx, instance);
    int foot = -1;
    for (size_t i = 0; i < a.nodes.size(); i++)
        if (a.nodes[i].mark == Mark::Foot) foot = int(i);
    if (foot < 0) throw std::runtime_error("adjoin: auxiliary tree has no foot");

    for (auto& n : a.nodes) {
        DerivedNode m = n;
        m.parent = n.parent == -1 ? -2 : n.parent + base;  // -2: patched below
        for (auto& c : m.children) c += base;
        out.nodes.push_back(m);
    }
    int aux_root = base + a.root;
    int aux_foot = base + foot;

    // splice the auxiliary in place of the excised subtree
    int up = site.parent;
    out.nodes[size_t(aux_root)].parent = up;
    if (up == -1) {
        out.root = aux_root;
    } else {
        for (auto& c : out.nodes[size_t(up)].children)
            if (c == at) c = aux_root;
    }
    // hang the excised subtree at the foot; the foot node itself becomes a
    // plain interior node dominating it (still closed to adjunction)
    out.nodes[size_t(aux_foot)].mark = Mark::Interior;
    out.nodes[size_t(aux_foot)].hosted_adjunction = true;
    out.nodes[size_t(aux_foot)].children.push_back(at);
    out.nodes[size_t(at)].parent = aux_foot;
    out.nodes[size_t(at)].hosted_adjunction = true;
    return out;
}

// Dominance-link and set-completeness check over a finished derivation.
// Member-tree instance pairing is not recorded in the derived tree, so we
// search for a pairing under which every link holds.
inline bool check_dominance(const DerivedTree& d, const Grammar& g) {
    for (size_t s = 0; s < g.sets.size(); s++) {
        const TreeSet& set = g.sets[s];
        // instances of each member used in this derivation
        std::vector<std::vector<int>> uses;  // per member, list of instance ids
        for (auto& m : set.members) {
            int ti = g.find_tree(m);
            std::set<int> inst;
            for (auto& n : d.nodes)
                if (n.src_tree == ti) inst.insert(n.instance);
            uses.push_back(std::vector<int>(inst.begin(), inst.end()));
        }
        size_t count = uses.empty() ? 0 : uses[0].size();
        for (auto& u : uses)
            if (u.size() != count) return false;  // all-or-none per instance
        if (count == 0) continue;

        // locate a node image for (tree instance, node id)
        auto image = [&](const std::string& tree_id, const std::string& node_id, int instance) {
            int ti = g.find_tree(tree_id);
            int ni = g.trees[size_t(ti)].find_node(node_id);
            for (size_t k = 0; k < d.nodes.size(); k++)
                if (d.nodes[k].src_tree == ti && d.nodes[k].src_node == ni &&
                    d.nodes[k].instance == instance)
                    return int(k);
            return -1;
        };

        // try to match instances of member 0 against the other members
        // (sets in this grammar family are small; exhaustive pairing is fine)
        std::vector<int> perm(count);
        for (size_t i = 0; i < count; i++) perm[i] = int(i);
        bool found = false;
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (auto& link : set.links) {
                int um = -1, lm = -1;
                for (size_t m = 0; m < set.members.size(); m++) {
                    if (set.members[m] == link.upper_tree) um = int(m);
                    if (set.members[m] == link.lower_tree) lm = int(m);
                }
                if (um < 0 || lm < 0) { ok = false; break; }
                for (size_t i = 0; i < count && ok; i++) {
                    int u_inst = uses[size_t(um)][um == 0 ? i : size_t(perm[i])];
                    int l_inst = uses[size_t(lm)][lm == 0 ? i : size_t(perm[i])];
                    int u = image(link.upper_tree, link.upper_node, u_inst);
                    int l = image(link.lower_tree, link.lower_node, l_inst);
                    if (u < 0 || l < 0 || !d.dominates(u, l)) ok = false;
                }
                if (!ok) break;
            }
            if (ok) { found = true; break; }
        } while (std::next_permutation(perm.begin(), perm.end()));
        if (!found) return false;
    }
    return true;
}

}  // namespace tagload

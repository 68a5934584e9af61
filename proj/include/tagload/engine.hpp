#pragma once

// Automaton execution: a stack of stacks of quasi-categorial symbols, run
// over a token sequence with depth-first backtracking. Moves are grouped by
// priority ({UNWRAP, POP} > POSIT > PASS > {PUSH, SHIFT}); a lower group is
// offered only when every higher group is empty, which keeps returned
// traces compliant with the incremental ordering discipline.

#include <functional>
#include <unordered_set>

#include "compile.hpp"

namespace tagload {

struct PendingItem {
    std::string render;   // slot node id (doubles as the surface token)
    std::string label;
    CaseTag cas = CaseTag::None;
    bool index = false;   // passable requirement contributed by a set sibling
    int origin = -1;      // instance whose projection the filler counts toward

    bool operator==(const PendingItem& o) const {
        return render == o.render && label == o.label && cas == o.cas &&
               index == o.index && origin == o.origin;
    }
};

struct AbsorbedItem {
    std::string token;
    WordClass wclass = WordClass::Content;
};

struct Symbol {
    enum Kind { Bare, FootMark, Proj } kind = Bare;

    // Bare
    std::string token;
    CaseTag cas = CaseTag::None;
    WordClass wclass = WordClass::Content;
    bool nominal = false;

    // FootMark / Proj
    int tree = -1;
    int inst = -1;
    int node = -1;            // current spine position (Proj) or foot node
    bool overt = true;        // h+ / h-
    std::vector<PendingItem> pending;
    std::vector<AbsorbedItem> absorbed;
    bool site_consumed = false;
    bool credit_foot = false;     // right-edge foot raised through on credit
    bool function_closed = false; // a function word has integrated here

    bool has_index_pending() const {
        for (auto& p : pending)
            if (p.index) return true;
        return false;
    }
};

using SymStack = std::vector<Symbol>;

enum class MoveKind {
    Shift, Unwrap, Pop, Push, Posit, Pass
};

inline std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::Shift: return "SHIFT";
        case MoveKind::Unwrap: return "UNWRAP";
        case MoveKind::Pop: return "POP";
        case MoveKind::Push: return "PUSH";
        case MoveKind::Posit: return "POSIT";
        case MoveKind::Pass: return "PASS";
    }
    return "?";
}

struct Config {
    std::vector<SymStack> stacks;
    int pos = 0;
    int pops = 0;
    int chain_below = -2;        // instance expected to pop next (-2 none recorded)
    std::string obligation;      // foot label awaiting its clause, "" if none
    int posits_here = 0;
    int next_inst = 0;

    bool store_empty() const { return stacks.empty(); }
    SymStack& top() { return stacks.back(); }
    const SymStack& top() const { return stacks.back(); }
};

struct RunOptions {
    int max_posits_per_token = 4;
    int max_store_depth = 64;
    int max_steps = 4096;
    bool collect_all = true;
};

struct Step {
    MoveKind kind = MoveKind::Shift;
    std::string detail;
    bool scoring = true;
    std::string read;            // token consumed, if any
    std::vector<SymStack> store; // configuration after the move
    int pos = 0;
    // pop bookkeeping for the interpretation checker
    bool is_pop = false;
    Symbol popped;
    int pop_below_inst = -2;
    bool pop_on_credit = false;
    std::string popped_root_label;
};

struct Trace {
    std::vector<std::string> input;
    std::vector<Step> steps;
    bool accepted = false;
};

struct RunError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Engine {
public:
    Engine(const RuleSet& rules, RunOptions opt = {})
        : rs_(rules), g_(*rules.grammar), opt_(opt) {}

    // all accepting traces for the given input
    std::vector<Trace> run(const std::vector<std::string>& input) const {
        for (auto& tok : input)
            if (g_.token_info(tok).kind == TokenInfo::Unknown)
                throw RunError("unknown token: " + tok);
        std::vector<Trace> out;
        Config cfg;
        std::vector<Step> steps;
        std::vector<std::string> path;
        search(cfg, input, steps, path, out);
        return out;
    }

    // does the automaton accept the input at all (early exit)
    bool accepts(const std::vector<std::string>& input) const {
        Config cfg;
        std::vector<Step> steps;
        std::vector<std::string> path;
        return probe(cfg, input, steps, path);
    }

    // every accepted sequence over the grammar's terminals up to max_len;
    // an exhaustive driver over run
    std::vector<std::vector<std::string>> accepted_language(int max_len) const {
        if (max_len > 10) throw RunError("accepted_language bound exceeded");
        std::vector<std::vector<std::string>> out;
        auto terms = g_.terminals();
        std::vector<std::string> seq;
        std::function<void()> walk = [&]() {
            if (!seq.empty() && accepts(seq)) out.push_back(seq);
            if (int(seq.size()) >= max_len) return;
            for (auto& t : terms) {
                seq.push_back(t);
                walk();
                seq.pop_back();
            }
        };
        walk();
        std::sort(out.begin(), out.end());
        return out;
    }

    // --- move layer (exposed for property tests) ---------------------------

    struct Move {
        MoveKind kind;
        int variant = 0;
        std::string detail;
        std::function<void(Config&, Step&)> apply;
    };

    std::vector<Move> applicable_moves(const Config& cfg, const std::vector<std::string>& input) const {
        std::vector<Move> m;
        unwrap_moves(cfg, input, m);
        pop_moves(cfg, input, m);
        if (!m.empty()) return m;
        posit_moves(cfg, input, m);
        if (!m.empty()) return m;
        pass_moves(cfg, m);
        if (!m.empty()) return m;
        push_moves(cfg, m);
        shift_moves(cfg, input, m);
        return m;
    }

    bool accepting(const Config& cfg, const std::vector<std::string>& input) const {
        return cfg.pos == int(input.size()) && cfg.store_empty() &&
               cfg.obligation.empty() && cfg.pops > 0;
    }

    const RuleSet& rules() const { return rs_; }
    const Grammar& grammar() const { return g_; }

private:
    const RuleSet& rs_;
    const Grammar& g_;
    RunOptions opt_;

    const ElementaryTree& tree(int t) const { return g_.trees[size_t(t)]; }
    const TreeInfo& info(int t) const { return rs_.info(t); }

    // ---- spine raising -----------------------------------------------------

    // climb through unary links and right-edge foot rules (on credit)
    void raise_symbol(Symbol& s) const {
        const ElementaryTree& t = tree(s.tree);
        for (;;) {
            int p = t.node(s.node).parent;
            if (p < 0) break;
            const auto& ch = t.node(p).children;
            if (ch.size() == 1) {
                s.node = p;
                s.site_consumed = false;
                continue;
            }
            if (ch.size() == 2) {
                int other = ch[0] == s.node ? ch[1] : ch[0];
                bool foot_after = ch[0] == s.node;
                if (t.node(other).mark == Mark::Foot && foot_after && t.foot_is_right_edge()) {
                    s.node = p;
                    s.site_consumed = false;
                    s.credit_foot = true;
                    continue;
                }
            }
            break;
        }
    }

    Symbol make_projection(int t, int inst, int node, bool overt) const {
        Symbol s;
        s.kind = Symbol::Proj;
        s.tree = t;
        s.inst = inst;
        s.node = node;
        s.overt = overt;
        for (auto& p : info(t).pending[size_t(node)]) {
            PendingItem it;
            it.render = p.render;
            it.label = p.label;
            it.cas = p.cas;
            it.index = p.index;
            it.origin = inst;
            s.pending.push_back(it);
        }
        return s;
    }

    static bool stack_is_bare(const SymStack& st) {
        for (auto& s : st)
            if (s.kind != Symbol::Bare) return false;
        return !st.empty();
    }

    // ---- class 1: unwraps ----------------------------------------------------

    void unwrap_moves(const Config& cfg, const std::vector<std::string>& input,
                      std::vector<Move>& out) const {
        if (cfg.store_empty()) return;
        const SymStack& top = cfg.top();
        const Symbol& ts = top.back();
        size_t n = cfg.stacks.size();

        // slot discharge: [.. [N] [ .. V{N..} ]  ->  [.. [ .. V{} ]
        if (ts.kind == Symbol::Proj && n >= 2) {
            const SymStack& below = cfg.stacks[n - 2];
            if (below.size() == 1 && below[0].kind == Symbol::Bare && below[0].nominal) {
                const ElementaryTree& t = tree(ts.tree);
                int p = t.node(ts.node).parent;
                if (p >= 0) {
                    int slot = -1;
                    bool fits = true;
                    for (int c : t.node(p).children) {
                        if (c == ts.node) continue;
                        if (t.node(c).mark == Mark::Subst && slot < 0) slot = c;
                        else fits = false;
                    }
                    if (fits && slot >= 0 && case_matches(t.node(slot).cas, below[0].cas)) {
                        // the slot must still be pending on this symbol
                        int pi = -1;
                        for (size_t i = 0; i < ts.pending.size(); i++)
                            if (!ts.pending[i].index && ts.pending[i].render == t.node(slot).id)
                                pi = int(i);
                        if (pi >= 0) {
                            int slot_node = slot, pend = pi;
                            out.push_back(Move{MoveKind::Unwrap, 0,
                                "arg " + t.node(slot_node).id,
                                [this, slot_node, pend](Config& c, Step& st) {
                                    size_t k = c.stacks.size();
                                    Symbol& s = c.stacks[k - 1].back();
                                    Symbol filler = c.stacks[k - 2][0];
                                    c.stacks.erase(c.stacks.begin() + long(k) - 2);
                                    s.pending.erase(s.pending.begin() + pend);
                                    s.absorbed.push_back({filler.token, filler.wclass});
                                    s.node = tree(s.tree).node(s.node).parent;
                                    s.site_consumed = false;
                                    raise_symbol(s);
                                    st.detail = "arg";
                                }});
                        }
                    }
                }
            }
        }

        // index discharge: simulated adjunction of a set sibling at this symbol
        if (ts.kind == Symbol::Proj && n >= 2 && !ts.site_consumed && !ts.function_closed) {
            const SymStack& below = cfg.stacks[n - 2];
            if (below.size() == 1 && below[0].kind == Symbol::Bare && below[0].nominal) {
                for (size_t i = 0; i < ts.pending.size(); i++) {
                    if (!ts.pending[i].index) continue;
                    if (!case_matches(ts.pending[i].cas, below[0].cas)) continue;
                    int pend = int(i);
                    out.push_back(Move{MoveKind::Unwrap, 1,
                        "index " + ts.pending[i].render,
                        [pend](Config& c, Step& st) {
                            size_t k = c.stacks.size();
                            Symbol& s = c.stacks[k - 1].back();
                            Symbol filler = c.stacks[k - 2][0];
                            int origin = s.pending[size_t(pend)].origin;
                            c.stacks.erase(c.stacks.begin() + long(k) - 2);
                            s.pending.erase(s.pending.begin() + pend);
                            // the filler's weight travels with the verb that
                            // subcategorizes it
                            SymStack& stck = c.stacks.back();
                            bool placed = false;
                            for (auto& sym : stck) {
                                if (sym.kind == Symbol::Proj && sym.inst == origin) {
                                    sym.absorbed.push_back({filler.token, filler.wclass});
                                    placed = true;
                                    break;
                                }
                            }
                            if (!placed)
                                stck.back().absorbed.push_back({filler.token, filler.wclass});
                            stck.back().site_consumed = false;
                            st.detail = "index";
                        }});
                }
            }
        }

        // centre foot unwrap: [.. [ .. T ] [A]  ->  [.. [ .. T U ]
        // (anchor-side projection above its adjunction site)
        if (ts.kind == Symbol::Proj && top.size() == 1 && ts.kind == Symbol::Proj && n >= 2 &&
            !ts.credit_foot && info(ts.tree).mode == TreeMode::Verbal) {
            const ElementaryTree& t = tree(ts.tree);
            if (t.kind == TreeKind::Auxiliary && t.foot >= 0) {
                int p = t.node(ts.node).parent;
                if (p >= 0) {
                    const auto& ch = t.node(p).children;
                    bool foot_before = ch.size() == 2 && ch[0] == t.foot && ch[1] == ts.node;
                    const SymStack& site_stack = cfg.stacks[n - 2];
                    const Symbol& site = site_stack.back();
                    if (foot_before && site.kind == Symbol::Proj && !site.site_consumed &&
                        tree(site.tree).node(site.node).label == t.node(t.foot).label) {
                        int lhs = p;
                        out.push_back(Move{MoveKind::Unwrap, 2, "foot " + t.id,
                            [this, lhs](Config& c, Step& st) {
                                Symbol a = c.stacks.back()[0];
                                c.stacks.pop_back();
                                c.stacks.back().back().site_consumed = true;
                                a.node = lhs;
                                a.site_consumed = false;
                                raise_symbol(a);
                                c.stacks.back().push_back(a);
                                st.detail = "foot " + tree(a.tree).id;
                            }});
                    }
                }
            }
        }

        // extraposed foot unwrap: [.. [A] [ .. T ]  ->  [.. [ .. T U ]
        // (site completed after the clause whose right-edge foot it fills)
        if (ts.kind == Symbol::Proj && !ts.site_consumed && n >= 2) {
            const SymStack& below = cfg.stacks[n - 2];
            if (below.size() == 1 && below[0].kind == Symbol::Proj && below[0].credit_foot) {
                const ElementaryTree& ut = tree(below[0].tree);
                if (ut.kind == TreeKind::Auxiliary && ut.foot >= 0 &&
                    ut.node(ut.foot).label == tree(ts.tree).node(ts.node).label) {
                    out.push_back(Move{MoveKind::Unwrap, 3, "foot " + ut.id,
                        [](Config& c, Step& st) {
                            size_t k = c.stacks.size();
                            Symbol a = c.stacks[k - 2][0];
                            c.stacks.erase(c.stacks.begin() + long(k) - 2);
                            a.credit_foot = false;
                            c.stacks.back().back().site_consumed = true;
                            a.site_consumed = false;
                            c.stacks.back().push_back(a);
                            st.detail = "foot late";
                        }});
                }
            }
        }

        // overt head unwrap: [.. [ .. S ] [v]  ->  [.. [ .. R ]
        // (raised lexical head joining its trace projection)
        if (ts.kind == Symbol::Bare && top.size() == 1 && !ts.nominal &&
            ts.wclass == WordClass::Content && n >= 2) {
            const SymStack& below = cfg.stacks[n - 2];
            if (!below.empty() && below.back().kind == Symbol::Proj && !below.back().overt) {
                const Symbol& s = below.back();
                const ElementaryTree& t = tree(s.tree);
                if (t.anchor >= 0 && t.node(t.anchor).lexeme == ts.token) {
                    int p = t.node(s.node).parent;
                    if (p >= 0) {
                        const auto& ch = t.node(p).children;
                        bool pairs = ch.size() == 2 &&
                                     ((ch[0] == s.node && ch[1] == t.anchor) ||
                                      (ch[0] == t.anchor && ch[1] == s.node));
                        if (pairs) {
                            int lhs = p;
                            out.push_back(Move{MoveKind::Unwrap, 4, "head " + t.id,
                                [this, lhs](Config& c, Step& st) {
                                    Symbol tok = c.stacks.back()[0];
                                    c.stacks.pop_back();
                                    Symbol& s2 = c.stacks.back().back();
                                    s2.node = lhs;
                                    s2.overt = true;
                                    s2.site_consumed = false;
                                    s2.absorbed.push_back({tok.token, tok.wclass});
                                    raise_symbol(s2);
                                    st.detail = "head";
                                }});
                        }
                    }
                }
            }
        }

        // function word integration: [.. [f] [ .. V ]  ->  [.. [ .. V ]
        if (ts.kind == Symbol::Proj && !ts.site_consumed && n >= 2) {
            const SymStack& below = cfg.stacks[n - 2];
            if (below.size() == 1 && below[0].kind == Symbol::Bare &&
                below[0].wclass == WordClass::Function) {
                for (int ft : g_.token_info(below[0].token).anchor_trees) {
                    if (info(ft).mode != TreeMode::Function) continue;
                    const ElementaryTree& t = tree(ft);
                    if (t.foot < 0 ||
                        t.node(t.foot).label != tree(ts.tree).node(ts.node).label)
                        continue;
                    out.push_back(Move{MoveKind::Unwrap, 5, "integrate " + below[0].token,
                        [](Config& c, Step& st) {
                            size_t k = c.stacks.size();
                            Symbol f = c.stacks[k - 2][0];
                            c.stacks.erase(c.stacks.begin() + long(k) - 2);
                            Symbol& s = c.stacks.back().back();
                            s.absorbed.push_back({f.token, WordClass::Function});
                            s.function_closed = true;
                            s.site_consumed = false;
                            st.detail = "integrate " + f.token;
                        }});
                    break;
                }
            }
        }

        // plain-mode reductions and unwraps
        node_mode_unwraps(cfg, out);
    }

    void node_mode_unwraps(const Config& cfg, std::vector<Move>& out) const {
        if (cfg.store_empty()) return;
        const SymStack& top = cfg.top();
        size_t n = cfg.stacks.size();

        for (size_t ti = 0; ti < g_.trees.size(); ti++) {
            if (info(int(ti)).mode != TreeMode::Plain) continue;
            const ElementaryTree& t = g_.trees[ti];
            for (size_t ni = 0; ni < t.nodes.size(); ni++) {
                const TreeNode& nd = t.nodes[ni];
                if (nd.children.empty()) continue;

                // split children into lexical leaves and structural ones
                std::vector<int> structural;
                for (int c : nd.children)
                    if (!(t.node(c).children.empty() && !t.node(c).lexeme.empty()))
                        structural.push_back(c);

                if (structural.empty()) {
                    // terminal reduction: pop the lexeme sequence off the top stack
                    size_t k = nd.children.size();
                    if (top.size() < k) continue;
                    bool match = true;
                    for (size_t j = 0; j < k; j++) {
                        const Symbol& s = top[top.size() - k + j];
                        if (s.kind != Symbol::Bare || s.token != t.node(nd.children[j]).lexeme)
                            match = false;
                    }
                    if (!match) continue;
                    int tn = int(ni), tt = int(ti);
                    out.push_back(Move{MoveKind::Unwrap, 6, "reduce " + t.id + ":" + nd.id,
                        [this, tt, tn, k](Config& c, Step& st) {
                            SymStack& stck = c.stacks.back();
                            std::vector<AbsorbedItem> abs;
                            for (size_t j = stck.size() - k; j < stck.size(); j++)
                                abs.push_back({stck[j].token, stck[j].wclass});
                            stck.resize(stck.size() - k);
                            Symbol s;
                            s.kind = Symbol::Proj;
                            s.tree = tt;
                            s.inst = c.next_inst++;
                            s.node = tn;
                            s.absorbed = abs;
                            stck.push_back(s);
                            st.detail = "reduce " + tree(tt).id;
                        }});
                    continue;
                }

                // internal rule: designated child is the foot when present,
                // otherwise the first structural child
                int designated = structural[0];
                for (int c : structural)
                    if (t.node(c).mark == Mark::Foot) designated = c;

                std::vector<int> lefts, rights;
                bool seen_d = false;
                for (int c : nd.children) {
                    if (c == designated) { seen_d = true; continue; }
                    (seen_d ? rights : lefts).push_back(c);
                }
                // only lexical-leaf siblings are supported as removed stacks
                bool simple = true;
                for (int c : lefts)
                    if (t.node(c).lexeme.empty()) simple = false;
                for (int c : rights)
                    if (t.node(c).lexeme.empty()) simple = false;
                if (!simple) continue;

                size_t need = 1 + rights.size();
                if (n < lefts.size() + need) continue;
                // top stacks: rights (bottom-to-top), designated below them,
                // lefts below that
                bool ok = true;
                for (size_t j = 0; j < rights.size(); j++) {
                    const SymStack& s = cfg.stacks[n - 1 - (rights.size() - 1 - j)];
                    if (s.size() != 1 || s[0].kind != Symbol::Bare ||
                        s[0].token != t.node(rights[j]).lexeme)
                        ok = false;
                }
                const SymStack& dst = cfg.stacks[n - need];
                if (dst.empty()) ok = false;
                if (ok) {
                    const Symbol& d = dst.back();
                    if (t.node(designated).mark == Mark::Foot) {
                        if (d.kind != Symbol::FootMark || d.tree != int(ti)) ok = false;
                    } else {
                        if (d.kind != Symbol::Proj || d.tree != int(ti) || d.node != designated)
                            ok = false;
                    }
                }
                for (size_t j = 0; ok && j < lefts.size(); j++) {
                    size_t idx = n - need - lefts.size() + j;
                    const SymStack& s = cfg.stacks[idx];
                    if (s.size() != 1 || s[0].kind != Symbol::Bare ||
                        s[0].token != t.node(lefts[j]).lexeme)
                        ok = false;
                }
                if (!ok) continue;
                int tn = int(ni), tt = int(ti);
                size_t nl = lefts.size(), nr = rights.size();
                out.push_back(Move{MoveKind::Unwrap, 7, "rule " + t.id + ":" + nd.id,
                    [this, tt, tn, nl, nr](Config& c, Step& st) {
                        size_t nn = c.stacks.size();
                        std::vector<AbsorbedItem> extra;
                        for (size_t j = 0; j < nr; j++) {
                            extra.push_back({c.stacks.back()[0].token, WordClass::Content});
                            c.stacks.pop_back();
                        }
                        nn = c.stacks.size();
                        for (size_t j = 0; j < nl; j++) {
                            size_t idx = nn - 2 - j;
                            extra.push_back({c.stacks[idx][0].token, WordClass::Content});
                            c.stacks.erase(c.stacks.begin() + long(idx));
                            nn--;
                        }
                        SymStack& stck = c.stacks.back();
                        Symbol d = stck.back();
                        stck.pop_back();
                        Symbol s;
                        s.kind = Symbol::Proj;
                        s.tree = tt;
                        s.inst = d.inst;
                        s.node = tn;
                        s.absorbed = d.absorbed;
                        for (auto& a : extra) s.absorbed.push_back(a);
                        stck.push_back(s);
                        st.detail = "rule " + tree(tt).id;
                    }});
            }
        }
    }

    // ---- class 1: pops -------------------------------------------------------

    void pop_moves(const Config& cfg, const std::vector<std::string>& input,
                   std::vector<Move>& out) const {
        if (cfg.store_empty()) return;
        const SymStack& top = cfg.top();
        const Symbol& s = top.back();
        if (s.kind != Symbol::Proj) return;
        const ElementaryTree& t = tree(s.tree);
        if (s.node != t.root) return;
        if (!s.pending.empty() || !s.overt) return;

        bool alone = cfg.stacks.size() == 1 && top.size() == 1;
        if (t.kind == TreeKind::Initial) {
            if (!alone || cfg.pos != int(input.size())) return;
        }
        if (s.credit_foot && !alone) return;  // on-credit discharge empties the store

        // an index below would be stranded by this pop
        for (size_t i = 0; i + 1 < top.size(); i++)
            if (top[i].kind == Symbol::Proj && top[i].has_index_pending()) return;

        // deferral: a remaining auxiliary anchor may still adjoin here while
        // unconsumed input material sits in the store
        if (t.kind == TreeKind::Auxiliary && !s.site_consumed) {
            bool bare_elsewhere = false;
            for (auto& st : cfg.stacks)
                if (stack_is_bare(st)) bare_elsewhere = true;
            if (bare_elsewhere) {
                std::string site_label = t.node(s.node).label;
                for (size_t p = size_t(cfg.pos); p < input.size(); p++) {
                    TokenInfo ti = g_.token_info(input[p]);
                    if (ti.kind != TokenInfo::AnchorLexeme) continue;
                    for (int at : ti.anchor_trees) {
                        const ElementaryTree& a = tree(at);
                        if (a.kind == TreeKind::Auxiliary && a.foot >= 0 &&
                            info(at).mode != TreeMode::Function &&
                            a.node(a.foot).label == site_label)
                            return;
                    }
                }
            }
        }

        // discharge-order chain
        std::string root_label = t.node(t.root).label;
        if (cfg.pops > 0) {
            if (!cfg.obligation.empty()) {
                if (root_label != cfg.obligation) return;
            } else if (cfg.chain_below != -2) {
                if (cfg.chain_below == -1 || s.inst != cfg.chain_below) return;
            } else {
                return;
            }
        }

        out.push_back(Move{MoveKind::Pop, 0, "pop " + t.id,
            [this, root_label](Config& c, Step& st) {
                SymStack& stck = c.stacks.back();
                Symbol popped = stck.back();
                stck.pop_back();
                st.is_pop = true;
                st.popped = popped;
                st.pop_below_inst = stck.empty() ? -1
                                   : (stck.back().kind == Symbol::Proj ? stck.back().inst : -1);
                st.popped_root_label = root_label;
                c.chain_below = st.pop_below_inst;
                if (!c.obligation.empty()) c.obligation.clear();
                if (popped.credit_foot) {
                    const ElementaryTree& t2 = tree(popped.tree);
                    c.obligation = t2.node(t2.foot).label;
                    st.pop_on_credit = true;
                }
                if (stck.empty()) c.stacks.pop_back();
                c.pops++;
                st.detail = "pop " + tree(popped.tree).id;
            }});
    }

    // ---- class 2: posits -----------------------------------------------------

    bool licensed(const Config& cfg, const std::vector<std::string>& input,
                  const std::string& posits) const {
        if (cfg.pos < int(input.size()) &&
            g_.token_licenses(input[size_t(cfg.pos)], posits))
            return true;
        for (int p = 0; p < cfg.pos; p++)
            if (g_.token_licenses(input[size_t(p)], posits)) return true;
        return false;
    }

    void posit_moves(const Config& cfg, const std::vector<std::string>& input,
                     std::vector<Move>& out) const {
        if (cfg.store_empty()) return;
        if (cfg.posits_here >= opt_.max_posits_per_token) return;
        const SymStack& top = cfg.top();
        size_t n = cfg.stacks.size();

        for (size_t ti = 0; ti < g_.trees.size(); ti++) {
            const TreeInfo& inf = info(int(ti));
            if (!inf.has_null_head || inf.posit_result_node < 0) continue;
            const ElementaryTree& t = g_.trees[ti];
            if (!licensed(cfg, input, t.node(t.null_head).label)) continue;

            if (inf.relabel_posit) {
                // the nominal sister is already on top: replacing it by the
                // saturated trace projection is a relabelling, not a move
                if (top.size() != 1 || top[0].kind != Symbol::Bare || !top[0].nominal) continue;
                int slot = inf.posit_sister_slot;
                if (!case_matches(t.node(slot).cas, top[0].cas)) continue;
                int tt = int(ti), res = inf.posit_result_node;
                out.push_back(Move{MoveKind::Posit, 0, "posit " + t.id,
                    [this, tt, res](Config& c, Step& st) {
                        Symbol filler = c.stacks.back()[0];
                        Symbol s = make_projection(tt, c.next_inst++, res, false);
                        s.absorbed.push_back({filler.token, filler.wclass});
                        raise_symbol(s);
                        c.stacks.back()[0] = s;
                        c.posits_here++;
                        st.scoring = false;
                        st.detail = "posit " + tree(tt).id + " (relabel)";
                    }});
            } else {
                // trace next to the foot: fuse the posit with the foot unwrap,
                // pushing the trace projection onto its adjunction site
                if (top.empty() || top.back().kind != Symbol::Proj) continue;
                const Symbol& site = top.back();
                if (site.site_consumed) continue;
                if (t.foot < 0 ||
                    t.node(t.foot).label != tree(site.tree).node(site.node).label)
                    continue;
                // the next unwrap up the spine must be enabled now
                int res = inf.posit_result_node;
                int p = t.node(res).parent;
                if (p >= 0) {
                    int slot = -1;
                    for (int c2 : t.node(p).children)
                        if (t.node(c2).mark == Mark::Subst) slot = c2;
                    if (slot >= 0) {
                        if (n < 2) continue;
                        const SymStack& below = cfg.stacks[n - 2];
                        if (below.size() != 1 || below[0].kind != Symbol::Bare ||
                            !below[0].nominal ||
                            !case_matches(t.node(slot).cas, below[0].cas))
                            continue;
                    }
                }
                int tt = int(ti);
                out.push_back(Move{MoveKind::Posit, 1, "posit " + t.id,
                    [this, tt, res](Config& c, Step& st) {
                        c.stacks.back().back().site_consumed = true;
                        Symbol s = make_projection(tt, c.next_inst++, res, false);
                        raise_symbol(s);
                        c.stacks.back().push_back(s);
                        c.posits_here++;
                        st.detail = "posit " + tree(tt).id;
                    }});
            }
        }
    }

    // ---- class 3: passes -------------------------------------------------------

    void pass_moves(const Config& cfg, std::vector<Move>& out) const {
        if (!rs_.pass_enabled || cfg.store_empty()) return;
        const SymStack& top = cfg.top();
        if (top.size() < 2) return;
        size_t n = cfg.stacks.size();
        // a pass is only useful while a matching filler waits just below
        if (n < 2) return;
        const SymStack& below = cfg.stacks[n - 2];
        if (below.size() != 1 || below[0].kind != Symbol::Bare || !below[0].nominal) return;

        for (size_t j = 0; j < top.size(); j++) {
            if (top[j].kind != Symbol::Proj) continue;
            for (size_t i = 0; i < top[j].pending.size(); i++) {
                if (!top[j].pending[i].index) continue;
                if (!case_matches(top[j].pending[i].cas, below[0].cas)) continue;
                for (int dir : {+1, -1}) {
                    size_t k = size_t(long(j) + dir);
                    if (dir < 0 && j == 0) continue;
                    if (k >= top.size()) continue;
                    if (top[k].kind != Symbol::Proj) continue;
                    int jj = int(j), ii = int(i), dd = dir;
                    out.push_back(Move{MoveKind::Pass, dir > 0 ? 0 : 1,
                        "pass " + top[j].pending[i].render,
                        [jj, ii, dd](Config& c, Step& st) {
                            SymStack& stck = c.stacks.back();
                            PendingItem it = stck[size_t(jj)].pending[size_t(ii)];
                            stck[size_t(jj)].pending.erase(
                                stck[size_t(jj)].pending.begin() + ii);
                            stck[size_t(jj + dd)].pending.push_back(it);
                            st.detail = "pass " + it.render + (dd > 0 ? " up" : " down");
                        }});
                }
            }
        }
    }

    // ---- class 4: pushes and shifts ---------------------------------------------

    void push_moves(const Config& cfg, std::vector<Move>& out) const {
        if (cfg.store_empty()) return;
        const Symbol& ts = cfg.top().back();
        if (ts.kind != Symbol::Proj || ts.site_consumed) return;
        if (info(ts.tree).mode != TreeMode::Plain) return;
        std::string label = tree(ts.tree).node(ts.node).label;
        for (size_t ti = 0; ti < g_.trees.size(); ti++) {
            const ElementaryTree& a = g_.trees[ti];
            if (a.kind != TreeKind::Auxiliary || info(int(ti)).mode != TreeMode::Plain) continue;
            if (a.foot < 0 || a.node(a.foot).label != label) continue;
            int tt = int(ti);
            out.push_back(Move{MoveKind::Push, 0, "push " + a.id,
                [this, tt](Config& c, Step& st) {
                    c.stacks.back().back().site_consumed = true;
                    Symbol f;
                    f.kind = Symbol::FootMark;
                    f.tree = tt;
                    f.inst = c.next_inst++;
                    f.node = tree(tt).foot;
                    c.stacks.back().push_back(f);
                    st.detail = "push " + tree(tt).id;
                }});
        }
    }

    void shift_moves(const Config& cfg, const std::vector<std::string>& input,
                     std::vector<Move>& out) const {
        if (cfg.pos >= int(input.size())) return;
        if (int(cfg.stacks.size()) >= opt_.max_store_depth) return;
        shift_options(cfg, input[size_t(cfg.pos)], out);
    }

    void shift_options(const Config&, const std::string& tok, std::vector<Move>& out) const {
        TokenInfo ti = g_.token_info(tok);
        if (ti.kind == TokenInfo::Nominal) {
            out.push_back(Move{MoveKind::Shift, 0, tok, [tok, ti](Config& c, Step& st) {
                Symbol s;
                s.token = tok;
                s.cas = ti.cas;
                s.nominal = true;
                c.stacks.push_back({s});
                c.pos++;
                c.posits_here = 0;
                st.read = tok;
                st.detail = tok;
            }});
            return;
        }
        bool bare_emitted = false;
        for (int at : ti.anchor_trees) {
            const TreeInfo& inf = info(at);
            bool bare = inf.mode == TreeMode::Function || inf.mode == TreeMode::Plain ||
                        inf.has_null_head;
            if (bare) {
                if (bare_emitted) continue;
                bare_emitted = true;
                WordClass wc = ti.wclass;
                out.push_back(Move{MoveKind::Shift, 0, tok, [tok, wc](Config& c, Step& st) {
                    Symbol s;
                    s.token = tok;
                    s.wclass = wc;
                    c.stacks.push_back({s});
                    c.pos++;
                    c.posits_here = 0;
                    st.read = tok;
                    st.detail = tok;
                }});
            } else {
                int tt = at;
                out.push_back(Move{MoveKind::Shift, 1, tok + "/" + tree(at).id,
                    [this, tok, tt](Config& c, Step& st) {
                        Symbol s = make_projection(tt, c.next_inst++, tree(tt).anchor, true);
                        s.absorbed.push_back({tok, WordClass::Content});
                        raise_symbol(s);
                        c.stacks.push_back({s});
                        c.pos++;
                        c.posits_here = 0;
                        st.read = tok;
                        st.detail = tok + " as " + tree(tt).id;
                    }});
            }
        }
    }

    // ---- search ------------------------------------------------------------------

    std::string fingerprint(const Config& cfg) const {
        std::string s = std::to_string(cfg.pos) + "|" + std::to_string(cfg.pops) + "|" +
                        std::to_string(cfg.chain_below) + "|" + cfg.obligation + "|" +
                        std::to_string(cfg.posits_here) + "|";
        for (auto& st : cfg.stacks) {
            s += "[";
            for (auto& sym : st) {
                s += std::to_string(int(sym.kind)) + ":" + sym.token + ":" +
                     std::to_string(sym.tree) + ":" + std::to_string(sym.node) + ":" +
                     std::to_string(sym.inst) + ":" + (sym.overt ? "+" : "-") +
                     (sym.site_consumed ? "c" : "") + (sym.credit_foot ? "f" : "") +
                     (sym.function_closed ? "x" : "");
                for (auto& p : sym.pending)
                    s += "(" + p.render + std::to_string(p.origin) + ")";
                s += std::to_string(sym.absorbed.size()) + ";";
            }
        }
        return s;
    }

    void search(const Config& cfg, const std::vector<std::string>& input,
                std::vector<Step>& steps, std::vector<std::string>& path,
                std::vector<Trace>& out) const {
        if (accepting(cfg, input)) {
            Trace t;
            t.input = input;
            t.steps = steps;
            t.accepted = true;
            out.push_back(t);
            return;
        }
        if (int(steps.size()) >= opt_.max_steps)
            throw RunError("search bound exceeded");
        std::string fp = fingerprint(cfg);
        if (std::find(path.begin(), path.end(), fp) != path.end()) return;
        path.push_back(fp);
        auto moves = applicable_moves(cfg, input);
        for (auto& m : moves) {
            Config next = cfg;
            Step st;
            st.kind = m.kind;
            st.detail = m.detail;
            m.apply(next, st);
            st.store = next.stacks;
            st.pos = next.pos;
            steps.push_back(st);
            search(next, input, steps, path, out);
            steps.pop_back();
        }
        path.pop_back();
    }

    bool probe(const Config& cfg, const std::vector<std::string>& input,
               std::vector<Step>& steps, std::vector<std::string>& path) const {
        if (accepting(cfg, input)) return true;
        if (int(steps.size()) >= opt_.max_steps) return false;
        std::string fp = fingerprint(cfg);
        if (std::find(path.begin(), path.end(), fp) != path.end()) return false;
        path.push_back(fp);
        auto moves = applicable_moves(cfg, input);
        for (auto& m : moves) {
            Config next = cfg;
            Step st;
            m.apply(next, st);
            steps.push_back(st);
            bool ok = probe(next, input, steps, path);
            steps.pop_back();
            if (ok) {
                path.pop_back();
                return true;
            }
        }
        path.pop_back();
        return false;
    }
};

}  // namespace tagload

#pragma once

// Processing-load metric: every overt lexical item held in the store
// contributes one point per step; empty heads contribute nothing, and a
// function word stops counting once it has integrated into a verbal
// projection. A trace's score is the sum over all scoring steps.

#include "engine.hpp"

namespace tagload {

struct WeightPolicy {
    int content_token = 1;
    int function_standalone = 1;
    int function_integrated = 0;
    int null_head = 0;
};

inline int symbol_weight(const Symbol& s, const WeightPolicy& p = {}) {
    switch (s.kind) {
        case Symbol::Bare:
            return s.wclass == WordClass::Function ? p.function_standalone : p.content_token;
        case Symbol::FootMark:
            return p.null_head;  // no lexical content
        case Symbol::Proj: {
            int w = 0;
            for (auto& a : s.absorbed)
                w += a.wclass == WordClass::Function ? p.function_integrated : p.content_token;
            return w;
        }
    }
    return 0;
}

inline int step_score(const std::vector<SymStack>& store, const WeightPolicy& p = {}) {
    int w = 0;
    for (auto& st : store)
        for (auto& s : st) w += symbol_weight(s, p);
    return w;
}

struct ScoreRow {
    int index = 0;          // scoring-step index, 1-based
    std::string move;
    int score = 0;
    int cumulative = 0;
};

struct ScoreReport {
    std::vector<std::string> sentence;
    std::vector<ScoreRow> per_step;
    int total = 0;
    bool ppi_ok = true;
    int trace_count = 0;
    bool accepted = true;
    std::string error;

    std::vector<int> step_scores() const {
        std::vector<int> v;
        for (auto& r : per_step) v.push_back(r.score);
        return v;
    }
};

inline ScoreReport score_trace(const Trace& t, const WeightPolicy& p = {}) {
    if (!t.accepted) throw std::runtime_error("score_trace: trace not accepted");
    ScoreReport rep;
    rep.sentence = t.input;
    rep.trace_count = 1;
    int cum = 0, idx = 0;
    for (auto& st : t.steps) {
        if (!st.scoring) continue;  // relabelling posits are not moves
        int s = step_score(st.store, p);
        cum += s;
        rep.per_step.push_back({++idx, to_string(st.kind) + " " + st.detail, s, cum});
    }
    rep.total = cum;
    return rep;
}

// --- partial-interpretation check ------------------------------------------

struct PPIReport {
    std::vector<std::string> discharge_order;   // tree ids of popped clauses
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Validates both discharge conditions against the trace snapshots: popped
// structures must be argument-complete, and after the first discharge each
// popped clause must be the one sitting immediately under the previous pop
// or the clause owed to an extraposed foot.
inline PPIReport check_ppi(const Trace& t, const Grammar& g) {
    PPIReport rep;
    bool have_prev = false;
    int expect_inst = -2;
    std::string expect_label;
    const std::vector<SymStack>* prev_store = nullptr;
    static const std::vector<SymStack> kEmpty;
    prev_store = &kEmpty;

    for (size_t i = 0; i < t.steps.size(); i++) {
        const Step& st = t.steps[i];
        if (st.is_pop) {
            const Symbol& popped = st.popped;
            const ElementaryTree& tree = g.trees[size_t(popped.tree)];
            rep.discharge_order.push_back(tree.id);

            if (!popped.pending.empty())
                rep.violations.push_back("argument-completeness: " + tree.id +
                                         " discharged with unfilled requirements");

            // recompute the symbol underneath from the pre-move snapshot
            int below = -1;
            if (!prev_store->empty()) {
                const SymStack& top = prev_store->back();
                if (top.size() >= 2 && top[top.size() - 2].kind == Symbol::Proj)
                    below = top[top.size() - 2].inst;
            }
            if (have_prev) {
                bool chained = false;
                if (!expect_label.empty())
                    chained = tree.node(tree.root).label == expect_label;
                else if (expect_inst >= 0)
                    chained = popped.inst == expect_inst;
                if (!chained)
                    rep.violations.push_back("discharge-order: " + tree.id +
                                             " popped out of embedding order");
            }
            have_prev = true;
            expect_inst = below;
            expect_label.clear();
            if (popped.credit_foot)
                expect_label = tree.node(tree.foot).label;
        }
        prev_store = &st.store;
    }
    return rep;
}

// --- sentence-level scoring ---------------------------------------------------

inline ScoreReport score_sentence(const Engine& eng, const std::vector<std::string>& input,
                                  const WeightPolicy& p = {}) {
    ScoreReport rep;
    rep.sentence = input;
    std::vector<Trace> traces;
    try {
        traces = eng.run(input);
    } catch (const RunError& e) {
        rep.accepted = false;
        rep.error = e.what();
        return rep;
    }
    if (traces.empty()) {
        rep.accepted = false;
        rep.error = "ungrammatical under this grammar";
        return rep;
    }
    int best = -1;
    for (size_t i = 0; i < traces.size(); i++) {
        ScoreReport r = score_trace(traces[i], p);
        if (best < 0 || r.total < rep.total) {
            best = int(i);
            rep.per_step = r.per_step;
            rep.total = r.total;
        }
    }
    rep.trace_count = int(traces.size());
    rep.ppi_ok = check_ppi(traces[size_t(best)], eng.grammar()).ok();
    return rep;
}

struct RankEntry {
    std::vector<std::string> sentence;
    ScoreReport report;
};

struct RankTable {
    std::vector<RankEntry> ranked;     // ascending by score
    std::vector<RankEntry> rejected;
};

inline RankTable rank(const Engine& eng, const std::vector<std::vector<std::string>>& sentences,
                      const WeightPolicy& p = {}) {
    RankTable tbl;
    for (auto& s : sentences) {
        RankEntry e;
        e.sentence = s;
        e.report = score_sentence(eng, s, p);
        if (e.report.accepted) tbl.ranked.push_back(e);
        else tbl.rejected.push_back(e);
    }
    std::stable_sort(tbl.ranked.begin(), tbl.ranked.end(),
                     [](const RankEntry& a, const RankEntry& b) {
                         return a.report.total < b.report.total;
                     });
    return tbl;
}

}  // namespace tagload

#pragma once

// Text rendering of stores, traces, and score tables. Stacks are written
// bottom-first with '[' marking the bottom of each stack; verbal projections
// use quasi-categorial labels listing their unfulfilled requirements.

#include <iomanip>

#include "score.hpp"

namespace tagload {

inline bool label_ambiguous(const Grammar& g, const std::string& label) {
    int trees_using = 0;
    for (auto& t : g.trees) {
        bool uses = false;
        for (auto& n : t.nodes)
            if (n.label == label && n.lexeme.empty()) uses = true;
        if (uses) trees_using++;
    }
    return trees_using > 1;
}

inline bool grammar_has_null_heads(const Grammar& g) {
    for (auto& t : g.trees)
        if (t.null_head >= 0) return true;
    return false;
}

inline std::string render_symbol(const Symbol& s, const Grammar& g, const RuleSet& rs) {
    switch (s.kind) {
        case Symbol::Bare:
            return s.token;
        case Symbol::FootMark: {
            const ElementaryTree& t = g.trees[size_t(s.tree)];
            std::string l = t.node(t.foot).label;
            return label_ambiguous(g, l) ? l + "_" + t.id : l;
        }
        case Symbol::Proj: {
            const ElementaryTree& t = g.trees[size_t(s.tree)];
            if (rs.info(s.tree).mode == TreeMode::Verbal) {
                std::string head = t.anchor >= 0 ? t.node(t.anchor).lexeme
                                                 : t.node(rs.info(s.tree).head_leaf).label;
                std::string out = head;
                if (grammar_has_null_heads(g)) out += s.overt ? "^h+" : "^h-";
                out += "{";
                for (size_t i = 0; i < s.pending.size(); i++) {
                    if (i) out += ",";
                    out += s.pending[i].render;
                }
                out += "}";
                return out;
            }
            std::string l = t.node(s.node).label;
            return label_ambiguous(g, l) ? l + "_" + t.id : l;
        }
    }
    return "?";
}

inline std::string render_store(const std::vector<SymStack>& store, const Grammar& g,
                                const RuleSet& rs) {
    std::string out;
    for (auto& st : store) {
        if (!out.empty()) out += " ";
        out += "[";
        for (size_t i = 0; i < st.size(); i++) {
            if (i) out += " ";
            out += render_symbol(st[i], g, rs);
        }
    }
    return out;
}

// store column only, one line per step (row 0 is the start configuration)
inline std::vector<std::string> store_column(const Trace& t, const Grammar& g,
                                             const RuleSet& rs) {
    std::vector<std::string> out;
    out.push_back("");
    for (auto& st : t.steps) out.push_back(render_store(st.store, g, rs));
    return out;
}

inline std::string render_trace_text(const Trace& t, const Grammar& g, const RuleSet& rs) {
    struct Row {
        std::string step, move, store, read;
    };
    std::vector<Row> rows;
    rows.push_back({"0", "-", "", ""});
    int n = 0;
    for (auto& st : t.steps) {
        Row r;
        r.step = std::to_string(++n);
        r.move = to_string(st.kind) + (st.detail.empty() ? "" : " " + st.detail);
        if (!st.scoring) r.move += " (no step)";
        r.store = render_store(st.store, g, rs);
        r.read = st.read;
        rows.push_back(r);
    }
    size_t w0 = 4, w1 = 4, w2 = 5;
    for (auto& r : rows) {
        w0 = std::max(w0, r.step.size());
        w1 = std::max(w1, r.move.size());
        w2 = std::max(w2, r.store.size());
    }
    std::ostringstream os;
    auto pad = [](const std::string& s, size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    os << pad("step", w0) << " | " << pad("move", w1) << " | " << pad("store", w2)
       << " | read\n";
    for (auto& r : rows)
        os << pad(r.step, w0) << " | " << pad(r.move, w1) << " | " << pad(r.store, w2)
           << " | " << r.read << "\n";
    return os.str();
}

// line-delimited key-value export, one record per step
inline std::string render_trace_records(const Trace& t, const Grammar& g, const RuleSet& rs) {
    std::ostringstream os;
    int n = 0;
    for (auto& st : t.steps) {
        os << "step=" << ++n << " kind=" << to_string(st.kind) << " detail=\"" << st.detail
           << "\" scoring=" << (st.scoring ? 1 : 0) << " pos=" << st.pos;
        if (!st.read.empty()) os << " read=" << st.read;
        os << " store=\"" << render_store(st.store, g, rs) << "\"\n";
    }
    return os.str();
}

inline std::string render_score_text(const ScoreReport& rep) {
    std::ostringstream os;
    os << "sentence:";
    for (auto& w : rep.sentence) os << " " << w;
    os << "\n";
    if (!rep.accepted) {
        os << "rejected: " << rep.error << "\n";
        return os.str();
    }
    os << "step | score | cumulative\n";
    for (auto& r : rep.per_step)
        os << std::setw(4) << r.index << " | " << std::setw(5) << r.score << " | "
           << std::setw(10) << r.cumulative << "\n";
    os << "total=" << rep.total << " traces=" << rep.trace_count
       << " ppi=" << (rep.ppi_ok ? "ok" : "violated") << "\n";
    return os.str();
}

inline std::string render_score_records(const ScoreReport& rep) {
    std::ostringstream os;
    std::string sent;
    for (auto& w : rep.sentence) sent += (sent.empty() ? "" : " ") + w;
    if (!rep.accepted) {
        os << "sentence=\"" << sent << "\" accepted=0 error=\"" << rep.error << "\"\n";
        return os.str();
    }
    for (auto& r : rep.per_step)
        os << "sentence=\"" << sent << "\" step=" << r.index << " score=" << r.score
           << " cumulative=" << r.cumulative << "\n";
    os << "sentence=\"" << sent << "\" accepted=1 total=" << rep.total
       << " traces=" << rep.trace_count << " ppi=" << (rep.ppi_ok ? 1 : 0) << "\n";
    return os.str();
}

inline std::string render_rank_table(const RankTable& tbl) {
    std::ostringstream os;
    os << "No. | Sentence | Score | Traces | PPI\n";
    int n = 0;
    for (auto& e : tbl.ranked) {
        std::string sent;
        for (auto& w : e.sentence) sent += (sent.empty() ? "" : " ") + w;
        os << std::setw(3) << ++n << " | " << sent << " | " << e.report.total << " | "
           << e.report.trace_count << " | " << (e.report.ppi_ok ? "ok" : "violated") << "\n";
    }
    if (!tbl.rejected.empty()) {
        os << "---\n";
        for (auto& e : tbl.rejected) {
            std::string sent;
            for (auto& w : e.sentence) sent += (sent.empty() ? "" : " ") + w;
            os << "  rejected | " << sent << "\n";
        }
    }
    return os.str();
}

}  // namespace tagload

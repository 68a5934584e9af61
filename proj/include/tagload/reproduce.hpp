#pragma once

// Golden checks over the bundled fixture grammars: automaton runs, per-step
// score columns, depth tables, and the word-order ranking, plus the
// oracle-equivalence and discharge-order checks. Shared by the CLI
// `reproduce` command and the acceptance test suite.

#include <sstream>

#include "derive.hpp"
#include "grammar_io.hpp"
#include "render.hpp"
#include "score.hpp"

namespace tagload {

struct CheckResult {
    std::string name;
    enum Status { Pass, Fail, Warn } status = Pass;
    std::string detail;
};

class Reproduction {
public:
    explicit Reproduction(const std::string& fixture_dir) : dir_(fixture_dir) {}

    std::vector<CheckResult> run_all() {
        std::vector<CheckResult> out;
        auto add = [&](const std::string& name, std::function<CheckResult()> f) {
            CheckResult r;
            try {
                r = f();
                r.name = name;
            } catch (const std::exception& e) {
                r.name = name;
                r.status = CheckResult::Fail;
                r.detail = std::string("exception: ") + e.what();
            }
            out.push_back(r);
        };

        add("abstract-run", [&] { return abstract_run(); });
        add("abstract-accept-abc", [&] { return abstract_abc(); });
        add("abstract-reject-ab", [&] { return abstract_ab(); });
        add("german-fragment-run", [&] { return german_fragment(); });
        add("german-nested-run", [&] { return german_nested(); });
        add("dutch-cross-serial-run", [&] { return dutch_run(); });
        add("extraposed-run", [&] { return extraposed_run(); });
        add("depth-table-german", [&] { return depth_german(); });
        add("depth-table-dutch", [&] { return depth_dutch(); });
        add("depth-table-extraposed", [&] { return depth_extraposed(); });
        add("depth-table-center-1", [&] { return center_depth1(); });
        add("scrambling-scores", [&] { return scrambling_scores(); });
        add("scrambling-rank-order", [&] { return scrambling_order(); });
        add("scrambled-run-27", [&] { return run27(); });
        add("topicalization-pair", [&] { return topic_pair(); });
        add("scrambled-run-30a", [&] { return run30a(); });
        add("topicalized-run-30b", [&] { return run30b(); });
        add("oracle-abstract", [&] { return oracle_check("abstract_fig2.grm", 8); });
        add("oracle-german", [&] { return oracle_check("german_fig4.grm", 6); });
        add("oracle-dutch", [&] { return oracle_check("dutch_fig6.grm", 6); });
        add("oracle-scrambling", [&] { return oracle_check("scrambling_fig8.grm", 6); });
        add("ppi-suite", [&] { return ppi_suite(); });
        return out;
    }

    static std::string format(const std::vector<CheckResult>& rs) {
        std::ostringstream os;
        int pass = 0, fail = 0, warn = 0;
        for (auto& r : rs) {
            const char* s = r.status == CheckResult::Pass ? "PASS"
                          : r.status == CheckResult::Warn ? "WARN" : "FAIL";
            os << s << "  " << r.name;
            if (!r.detail.empty()) os << "  (" << r.detail << ")";
            os << "\n";
            (r.status == CheckResult::Pass ? pass : r.status == CheckResult::Warn ? warn : fail)++;
        }
        os << "summary: " << pass << " pass, " << warn << " warn, " << fail << " fail\n";
        return os.str();
    }

    static bool all_ok(const std::vector<CheckResult>& rs) {
        for (auto& r : rs)
            if (r.status == CheckResult::Fail) return false;
        return true;
    }

    // --- shared helpers ------------------------------------------------------

    struct Ctx {
        Grammar g;
        RuleSet rs;
    };

    Ctx& ctx(const std::string& file) {
        auto it = cache_.find(file);
        if (it == cache_.end()) {
            Ctx c;
            c.g = load_grammar(dir_ + "/" + file);
            c.rs = compile(c.g);
            c.rs.grammar = nullptr;  // repaired below: keep pointer stable
            it = cache_.emplace(file, std::move(c)).first;
            it->second.rs.grammar = &it->second.g;
        }
        return it->second;
    }

    static std::vector<std::string> toks(const std::string& s) {
        std::vector<std::string> out;
        std::istringstream is(s);
        std::string w;
        while (is >> w) out.push_back(w);
        return out;
    }

    ScoreReport score(const std::string& file, const std::string& sent) {
        Ctx& c = ctx(file);
        Engine eng(c.rs);
        return score_sentence(eng, toks(sent));
    }

    static CheckResult expect_total(const ScoreReport& rep, int want, const std::string& what) {
        CheckResult r;
        if (!rep.accepted) {
            r.status = CheckResult::Fail;
            r.detail = what + ": rejected (" + rep.error + ")";
        } else if (rep.total != want) {
            r.status = CheckResult::Fail;
            r.detail = what + ": total " + std::to_string(rep.total) + ", expected " +
                       std::to_string(want);
        } else {
            r.detail = what + " = " + std::to_string(want);
        }
        return r;
    }

    static bool column_matches(const ScoreReport& rep, std::vector<int> want) {
        std::vector<int> got = rep.step_scores();
        while (!got.empty() && got.back() == 0) got.pop_back();
        while (!want.empty() && want.back() == 0) want.pop_back();
        return got == want;
    }

private:
    std::string dir_;
    std::map<std::string, Ctx> cache_;

    CheckResult abstract_run() {
        Ctx& c = ctx("abstract_fig2.grm");
        Engine eng(c.rs);
        auto traces = eng.run(toks("a x b y c"));
        CheckResult r;
        if (traces.size() != 1) {
            r.status = CheckResult::Fail;
            r.detail = "expected one accepting trace, got " + std::to_string(traces.size());
            return r;
        }
        std::vector<std::string> want = {
            "", "[a", "[a [x", "[a [x [b", "[a [x [A_alpha", "[a [x [A_alpha A_beta",
            "[a [x [A_alpha A_beta [y", "[a [A_alpha A_beta", "[a [A_alpha",
            "[a [A_alpha [c", "[S", ""};
        auto got = store_column(traces[0], c.g, c.rs);
        if (got != want) {
            r.status = CheckResult::Fail;
            std::string gs;
            for (auto& s : got) gs += s + " ; ";
            r.detail = "store column mismatch: " + gs;
            return r;
        }
        r.detail = "11 moves, store column exact";
        return r;
    }

    CheckResult abstract_abc() {
        Ctx& c = ctx("abstract_fig2.grm");
        Engine eng(c.rs);
        CheckResult r;
        if (!eng.accepts(toks("a b c"))) {
            r.status = CheckResult::Fail;
            r.detail = "a b c rejected";
        } else r.detail = "a b c accepted";
        return r;
    }

    CheckResult abstract_ab() {
        Ctx& c = ctx("abstract_fig2.grm");
        Engine eng(c.rs);
        CheckResult r;
        if (eng.accepts(toks("a b"))) {
            r.status = CheckResult::Fail;
            r.detail = "a b accepted";
        } else r.detail = "a b rejected";
        return r;
    }

    CheckResult german_fragment() {
        Ctx& c = ctx("german_fig4.grm");
        Engine eng(c.rs);
        auto traces = eng.run(toks("N3 V3"));
        CheckResult r;
        std::vector<std::string> want = {"", "[N3", "[N3 [V3{N3}", "[V3{}", ""};
        if (traces.size() != 1 || store_column(traces[0], c.g, c.rs) != want) {
            r.status = CheckResult::Fail;
            r.detail = "clause-fragment run differs";
            return r;
        }
        r.detail = "4 moves, empty store at the end";
        return r;
    }

    CheckResult german_nested() {
        auto rep = score("german_fig4.grm", "N1 N2 N3 V3 V2 V1");
        CheckResult r = expect_total(rep, 53, "nested depth 3");
        if (r.status != CheckResult::Pass) return r;
        if (!column_matches(rep, {1, 2, 3, 4, 4, 5, 5, 5, 6, 6, 6, 4, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        } else if (rep.trace_count != 1) {
            r.status = CheckResult::Fail;
            r.detail = "trace count " + std::to_string(rep.trace_count);
        }
        return r;
    }

    CheckResult dutch_run() {
        auto rep = score("dutch_fig6.grm", "N1 N2 N3 V1 V2 V3");
        CheckResult r = expect_total(rep, 39, "cross-serial depth 3");
        if (r.status != CheckResult::Pass) return r;
        if (!column_matches(rep, {1, 2, 3, 3, 3, 3, 3, 4, 4, 2, 3, 3, 1, 2, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        } else if (rep.trace_count != 1) {
            r.status = CheckResult::Fail;
            r.detail = "trace count " + std::to_string(rep.trace_count);
        }
        return r;
    }

    CheckResult extraposed_run() {
        auto rep = score("german_fig4_extraposed.grm", "N1 V1 N2 V2 N3 V3");
        CheckResult r = expect_total(rep, 15, "extraposed depth 3");
        if (r.status != CheckResult::Pass) return r;
        if (!column_matches(rep, {1, 2, 2, 0, 1, 2, 2, 0, 1, 2, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        }
        return r;
    }

    CheckResult depth_german() {
        std::vector<std::pair<std::string, int>> rows = {
            {"N3 V3", 5},
            {"N1 N3 V3 V1", 23},
            {"N1 N2 N3 V3 V2 V1", 53},
            {"N1 N2 N2 N3 V3 V2 V2 V1", 95},
        };
        return depth_rows("german_fig4.grm", rows, "center-embedded");
    }

    CheckResult depth_dutch() {
        std::vector<std::pair<std::string, int>> rows = {
            {"N3 V3", 5},
            {"N1 N3 V1 V3", 18},
            {"N1 N2 N3 V1 V2 V3", 39},
            {"N1 N2 N2 N3 V1 V2 V2 V3", 72},
        };
        return depth_rows("dutch_fig6.grm", rows, "cross-serial");
    }

    CheckResult depth_extraposed() {
        std::vector<std::pair<std::string, int>> rows = {
            {"N3 V3", 5},
            {"N1 V1 N3 V3", 10},
            {"N1 V1 N2 V2 N3 V3", 15},
            {"N1 V1 N2 V2 N2 V2 N3 V3", 20},
        };
        return depth_rows("german_fig4_extraposed.grm", rows, "extraposed");
    }

    CheckResult depth_rows(const std::string& file,
                           const std::vector<std::pair<std::string, int>>& rows,
                           const std::string& what) {
        CheckResult r;
        std::string got;
        bool ok = true;
        for (auto& [sent, want] : rows) {
            auto rep = score(file, sent);
            int total = rep.accepted ? rep.total : -1;
            got += (got.empty() ? "" : "/") + std::to_string(total);
            if (total != want) ok = false;
        }
        r.detail = what + " " + got;
        if (!ok) r.status = CheckResult::Fail;
        return r;
    }

    // the published depth-1 center value is 3; run-level computation and the
    // other depth table both give 5, which this artifact treats as canonical
    CheckResult center_depth1() {
        auto rep = score("german_fig4.grm", "N3 V3");
        CheckResult r;
        if (!rep.accepted || rep.total != 5) {
            r.status = CheckResult::Fail;
            r.detail = "depth-1 computes " + std::to_string(rep.total) + ", canonical 5";
        } else {
            r.status = CheckResult::Warn;
            r.detail = "computed 5 (published table prints 3)";
        }
        return r;
    }

    CheckResult scrambling_scores() {
        std::vector<std::pair<std::string, int>> rows = {
            {"Comp1 N1 V1 V2 N3 V3", 17},
            {"Comp1 N1 V1 N3 V3 V2", 24},
            {"Comp1 N1 N3 V3 V2 V1", 52},
            {"Comp1 N1 N3 V2 V3 V1", 58},
            {"Comp1 N3 N1 V3 V2 V1", 66},
        };
        return depth_rows("scrambling_fig8.grm", rows, "word orders");
    }

    CheckResult scrambling_order() {
        Ctx& c = ctx("scrambling_fig8.grm");
        Engine eng(c.rs);
        std::vector<std::vector<std::string>> sents = {
            toks("Comp1 N1 N3 V3 V2 V1"), toks("Comp1 N1 V1 V2 N3 V3"),
            toks("Comp1 N1 V1 N3 V3 V2"), toks("Comp1 N1 N3 V2 V3 V1"),
            toks("Comp1 N3 N1 V3 V2 V1")};
        RankTable tbl = rank(eng, sents);
        CheckResult r;
        std::vector<int> want = {17, 24, 52, 58, 66};
        std::vector<int> got;
        for (auto& e : tbl.ranked) got.push_back(e.report.total);
        if (got != want || !tbl.rejected.empty()) {
            r.status = CheckResult::Fail;
            std::string gs;
            for (int v : got) gs += std::to_string(v) + " ";
            r.detail = "ranking " + gs;
        } else r.detail = "17 < 24 < 52 < 58 < 66";
        return r;
    }

    CheckResult run27() {
        auto rep = score("scrambling_fig8.grm", "Comp1 N3 N1 V3 V2 V1");
        CheckResult r = expect_total(rep, 66, "two-boundary scrambling");
        if (r.status != CheckResult::Pass) return r;
        if (!column_matches(rep, {1, 2, 3, 4, 5, 5, 6, 6, 6, 6, 6, 6, 5, 3, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        } else if (rep.trace_count != 1) {
            r.status = CheckResult::Fail;
            r.detail = "trace count " + std::to_string(rep.trace_count);
        }
        return r;
    }

    CheckResult topic_pair() {
        auto a = score("topicalization_30.grm", "N11 Aux1 N2 N12 V2 V1");
        auto b = score("topicalization_30.grm", "N2 Aux1 N11 N12 V2 V1");
        CheckResult r;
        if (!a.accepted || !b.accepted || a.total != 57 || b.total != 48) {
            r.status = CheckResult::Fail;
            r.detail = "scrambled " + std::to_string(a.total) + ", topicalized " +
                       std::to_string(b.total);
        } else r.detail = "topicalized 48 < scrambled 57";
        return r;
    }

    CheckResult run30a() {
        auto rep = score("topicalization_30.grm", "N11 Aux1 N2 N12 V2 V1");
        CheckResult r = expect_total(rep, 57, "long-distance scrambling");
        if (r.status != CheckResult::Pass) return r;
        if (!column_matches(rep, {1, 2, 3, 4, 5, 6, 6, 6, 6, 6, 5, 5, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        }
        // the scrambled run needs requirement passing; the topicalized one none
        Ctx& c = ctx("topicalization_30.grm");
        Engine eng(c.rs);
        auto traces = eng.run(toks("N11 Aux1 N2 N12 V2 V1"));
        bool has_pass = false;
        for (auto& t : traces)
            for (auto& st : t.steps)
                if (st.kind == MoveKind::Pass) has_pass = true;
        if (!has_pass) {
            r.status = CheckResult::Fail;
            r.detail = "no passing step in the scrambled run";
        }
        return r;
    }

    CheckResult run30b() {
        Ctx& c = ctx("topicalization_30.grm");
        Engine eng(c.rs);
        auto traces = eng.run(toks("N2 Aux1 N11 N12 V2 V1"));
        CheckResult r;
        if (traces.size() != 1) {
            r.status = CheckResult::Fail;
            r.detail = "trace count " + std::to_string(traces.size());
            return r;
        }
        for (auto& st : traces[0].steps)
            if (st.kind == MoveKind::Pass) {
                r.status = CheckResult::Fail;
                r.detail = "topicalized run used a passing step";
                return r;
            }
        auto rep = score_trace(traces[0]);
        r = expect_total(rep, 48, "topicalization");
        if (r.status == CheckResult::Pass &&
            !column_matches(rep, {1, 2, 3, 4, 5, 6, 6, 6, 6, 5, 2, 2})) {
            r.status = CheckResult::Fail;
            r.detail = "step-score column differs";
        }
        return r;
    }

    CheckResult oracle_check(const std::string& file, int max_len) {
        Ctx& c = ctx(file);
        Engine eng(c.rs);
        auto accepted = eng.accepted_language(max_len);
        auto derived_set = generate_strings(c.g, max_len, max_len);
        std::set<std::vector<std::string>> accepted_set(accepted.begin(), accepted.end());
        CheckResult r;
        if (accepted_set == derived_set) {
            r.detail = std::to_string(accepted_set.size()) + " strings up to length " +
                       std::to_string(max_len);
            return r;
        }
        r.status = CheckResult::Fail;
        std::string diff;
        int shown = 0;
        for (auto& s : accepted_set)
            if (!derived_set.count(s) && shown++ < 3) {
                diff += " +[";
                for (auto& w : s) diff += w + " ";
                diff += "]";
            }
        shown = 0;
        for (auto& s : derived_set)
            if (!accepted_set.count(s) && shown++ < 3) {
                diff += " -[";
                for (auto& w : s) diff += w + " ";
                diff += "]";
            }
        r.detail = "languages differ:" + diff;
        return r;
    }

    CheckResult ppi_suite() {
        struct Item {
            const char* file;
            const char* sent;
        };
        std::vector<Item> items = {
            {"german_fig4.grm", "N3 V3"},
            {"german_fig4.grm", "N1 N3 V3 V1"},
            {"german_fig4.grm", "N1 N2 N3 V3 V2 V1"},
            {"german_fig4.grm", "N1 N2 N2 N3 V3 V2 V2 V1"},
            {"dutch_fig6.grm", "N3 V3"},
            {"dutch_fig6.grm", "N1 N3 V1 V3"},
            {"dutch_fig6.grm", "N1 N2 N3 V1 V2 V3"},
            {"german_fig4_extraposed.grm", "N1 V1 N2 V2 N3 V3"},
            {"scrambling_fig8.grm", "Comp1 N1 V1 V2 N3 V3"},
            {"scrambling_fig8.grm", "Comp1 N1 V1 N3 V3 V2"},
            {"scrambling_fig8.grm", "Comp1 N1 N3 V3 V2 V1"},
            {"scrambling_fig8.grm", "Comp1 N1 N3 V2 V3 V1"},
            {"scrambling_fig8.grm", "Comp1 N3 N1 V3 V2 V1"},
            {"topicalization_30.grm", "N11 Aux1 N2 N12 V2 V1"},
            {"topicalization_30.grm", "N2 Aux1 N11 N12 V2 V1"},
        };
        CheckResult r;
        int traces_checked = 0;
        for (auto& it : items) {
            Ctx& c = ctx(it.file);
            Engine eng(c.rs);
            auto traces = eng.run(toks(it.sent));
            if (traces.empty()) {
                r.status = CheckResult::Fail;
                r.detail = std::string("no trace for ") + it.sent;
                return r;
            }
            for (auto& t : traces) {
                traces_checked++;
                auto rep = check_ppi(t, c.g);
                if (!rep.ok()) {
                    r.status = CheckResult::Fail;
                    r.detail = std::string(it.sent) + ": " + rep.violations[0];
                    return r;
                }
            }
        }
        r.detail = std::to_string(traces_checked) + " accepting traces, zero violations";
        return r;
    }
};

}  // namespace tagload

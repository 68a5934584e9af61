// Command-line front end: load a grammar, run or score token sequences,
// rank word orders, compare the automaton against the derivation oracle,
// and execute the bundled reproduction suite.
//
// Exit codes: 0 success/accepted, 1 rejected or failed checks, 2 usage or
// file/parse errors.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tagload/reproduce.hpp"

using namespace tagload;

namespace {

std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

std::string fixture_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TAGLOAD_FIXTURES")) return env;
    return "fixtures";
}

struct Loaded {
    Grammar g;
    RuleSet rs;
};

Loaded load(const std::string& path) {
    Loaded l;
    l.g = load_grammar(path);
    l.rs = compile(l.g);
    return l;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tagload: grammar-driven automaton runs and processing-load scores"};
    app.require_subcommand(1);

    std::string grammar_path, sentence, sentences_file, format = "text", fixtures_flag;
    int max_length = 6, max_posits = 4;
    bool all_traces = false;

    auto add_common = [&](CLI::App* cmd, bool needs_grammar) {
        if (needs_grammar)
            cmd->add_option("--grammar", grammar_path, "grammar file")->required();
        cmd->add_option("--format", format, "text|records");
        cmd->add_option("--max-length", max_length, "length bound for enumeration");
        cmd->add_option("--max-posits", max_posits, "empty-head posits per input token");
        cmd->add_flag("--all-traces", all_traces, "print every accepting trace");
    };

    auto* run_cmd = app.add_subcommand("run", "run the automaton on a sentence");
    add_common(run_cmd, true);
    run_cmd->add_option("sentence", sentence, "whitespace-separated tokens")->required();

    auto* score_cmd = app.add_subcommand("score", "processing-load score for a sentence");
    add_common(score_cmd, true);
    score_cmd->add_option("sentence", sentence, "whitespace-separated tokens")->required();

    auto* rank_cmd = app.add_subcommand("rank", "rank sentences by processing load");
    add_common(rank_cmd, true);
    rank_cmd->add_option("--sentences", sentences_file, "file with one sentence per line")
        ->required();

    auto* oracle_cmd = app.add_subcommand("oracle-check",
                                          "compare automaton and derivation languages");
    add_common(oracle_cmd, true);

    auto* repro_cmd = app.add_subcommand("reproduce", "run the bundled golden suite");
    repro_cmd->add_option("--fixtures", fixtures_flag, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run_cmd->parsed() || score_cmd->parsed()) {
            Loaded l = load(grammar_path);
            RunOptions opt;
            opt.max_posits_per_token = max_posits;
            Engine eng(l.rs, opt);
            auto input = tokenize(sentence);
            auto traces = eng.run(input);
            if (run_cmd->parsed()) {
                if (traces.empty()) {
                    std::cout << "rejected\n";
                    return 1;
                }
                size_t n = all_traces ? traces.size() : 1;
                for (size_t i = 0; i < n; i++) {
                    if (format == "records")
                        std::cout << render_trace_records(traces[i], l.g, l.rs);
                    else
                        std::cout << render_trace_text(traces[i], l.g, l.rs);
                    if (i + 1 < n) std::cout << "\n";
                }
                return 0;
            }
            Engine eng2(l.rs, opt);
            ScoreReport rep = score_sentence(eng2, input);
            std::cout << (format == "records" ? render_score_records(rep)
                                              : render_score_text(rep));
            return rep.accepted ? 0 : 1;
        }
        if (rank_cmd->parsed()) {
            Loaded l = load(grammar_path);
            std::ifstream f(sentences_file);
            if (!f) {
                std::cerr << "cannot open " << sentences_file << "\n";
                return 2;
            }
            std::vector<std::vector<std::string>> sents;
            std::string line;
            while (std::getline(f, line)) {
                auto t = tokenize(line);
                if (!t.empty()) sents.push_back(t);
            }
            RunOptions opt;
            opt.max_posits_per_token = max_posits;
            Engine eng(l.rs, opt);
            RankTable tbl = rank(eng, sents);
            if (format == "records") {
                for (auto& e : tbl.ranked) std::cout << render_score_records(e.report);
                for (auto& e : tbl.rejected) std::cout << render_score_records(e.report);
            } else {
                std::cout << render_rank_table(tbl);
            }
            return 0;
        }
        if (oracle_cmd->parsed()) {
            Loaded l = load(grammar_path);
            Engine eng(l.rs);
            auto accepted = eng.accepted_language(max_length);
            auto derived = generate_strings(l.g, max_length, max_length);
            std::set<std::vector<std::string>> aset(accepted.begin(), accepted.end());
            if (aset == derived) {
                std::cout << "PASS language equality, " << aset.size()
                          << " strings up to length " << max_length << "\n";
                return 0;
            }
            std::cout << "FAIL languages differ (" << aset.size() << " accepted vs "
                      << derived.size() << " derived)\n";
            for (auto& s : aset)
                if (!derived.count(s)) {
                    std::cout << "  automaton only:";
                    for (auto& w : s) std::cout << " " << w;
                    std::cout << "\n";
                }
            for (auto& s : derived)
                if (!aset.count(s)) {
                    std::cout << "  oracle only:";
                    for (auto& w : s) std::cout << " " << w;
                    std::cout << "\n";
                }
            return 1;
        }
        if (repro_cmd->parsed()) {
            Reproduction rep(fixture_dir(fixtures_flag));
            auto results = rep.run_all();
            std::cout << Reproduction::format(results);
            return Reproduction::all_ok(results) ? 0 : 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "grammar error: " << e.what() << "\n";
        return 2;
    } catch (const RunError& e) {
        std::cerr << "run error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

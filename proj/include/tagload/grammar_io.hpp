#pragma once

// Line-oriented grammar file format:
//
//   grammar <name>
//   tree <tree-id> kind=(initial|auxiliary)
//   node <node-id> parent=(<node-id>|-) label=<LABEL>
//        mark=(interior|anchor|subst|foot|nullhead)
//        [lex="<token>"] [case=(NOM|ACC|DAT)] [class=(content|function)]
//   endtree
//   set <set-id> members=<tree-id>,<tree-id>[,...]
//   domlink <tree-id>:<node-id> dominates <tree-id>:<node-id>
//   license (lex="<token>"|label=<LABEL>) posits=<LABEL>
//   start <LABEL>[,<LABEL>...]
//
// '#' starts a comment; child order is declaration order under the same
// parent.

#include <fstream>
#include <sstream>

#include "grammar.hpp"

namespace tagload {

struct ParseError : std::runtime_error {
    int line;
    ParseError(int line_, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string w;
    while (is >> w) out.push_back(w);
    return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

// key=value fields; values may be quoted
inline bool field(const std::vector<std::string>& words, const std::string& key, std::string& out) {
    for (auto& w : words) {
        if (w.rfind(key + "=", 0) == 0) {
            out = w.substr(key.size() + 1);
            if (out.size() >= 2 && out.front() == '"' && out.back() == '"')
                out = out.substr(1, out.size() - 2);
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline Grammar parse_grammar(std::istream& in) {
    using namespace detail;
    Grammar g;
    ElementaryTree cur;
    bool in_tree = false;
    int lineno = 0;
    std::string line;

    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto words = split_ws(line);
        if (words.empty()) continue;
        const std::string& cmd = words[0];

        if (cmd == "grammar") {
            if (words.size() < 2) throw ParseError(lineno, "grammar needs a name");
            g.name = words[1];
        } else if (cmd == "tree") {
            if (in_tree) throw ParseError(lineno, "tree inside tree");
            if (words.size() < 2) throw ParseError(lineno, "tree needs an id");
            cur = ElementaryTree{};
            cur.id = words[1];
            std::string kind;
            if (!field(words, "kind", kind)) throw ParseError(lineno, "tree needs kind=");
            if (kind == "initial") cur.kind = TreeKind::Initial;
            else if (kind == "auxiliary") cur.kind = TreeKind::Auxiliary;
            else throw ParseError(lineno, "bad kind '" + kind + "'");
            in_tree = true;
        } else if (cmd == "node") {
            if (!in_tree) throw ParseError(lineno, "node outside tree");
            if (words.size() < 2) throw ParseError(lineno, "node needs an id");
            TreeNode n;
            n.id = words[1];
            if (cur.find_node(n.id) >= 0)
                throw ParseError(lineno, "duplicate node id '" + n.id + "'");
            std::string v;
            if (!field(words, "parent", v)) throw ParseError(lineno, "node needs parent=");
            if (v == "-") {
                n.parent = -1;
                if (cur.root >= 0) throw ParseError(lineno, "two roots in tree " + cur.id);
            } else {
                n.parent = cur.find_node(v);
                if (n.parent < 0) throw ParseError(lineno, "unknown parent '" + v + "'");
            }
            if (!field(words, "label", v)) throw ParseError(lineno, "node needs label=");
            n.label = v;
            if (!field(words, "mark", v)) throw ParseError(lineno, "node needs mark=");
            if (v == "interior") n.mark = Mark::Interior;
            else if (v == "anchor") n.mark = Mark::Anchor;
            else if (v == "subst") n.mark = Mark::Subst;
            else if (v == "foot") n.mark = Mark::Foot;
            else if (v == "nullhead") n.mark = Mark::NullHead;
            else throw ParseError(lineno, "bad mark '" + v + "'");
            if (field(words, "lex", v)) n.lexeme = v;
            if (field(words, "case", v)) {
                if (v == "NOM") n.cas = CaseTag::Nom;
                else if (v == "ACC") n.cas = CaseTag::Acc;
                else if (v == "DAT") n.cas = CaseTag::Dat;
                else throw ParseError(lineno, "bad case '" + v + "'");
            }
            if (field(words, "class", v)) {
                if (v == "content") n.wclass = WordClass::Content;
                else if (v == "function") n.wclass = WordClass::Function;
                else throw ParseError(lineno, "bad class '" + v + "'");
            }
            int idx = int(cur.nodes.size());
            cur.nodes.push_back(n);
            if (n.parent >= 0) cur.nodes[size_t(n.parent)].children.push_back(idx);
            else cur.root = idx;
        } else if (cmd == "endtree") {
            if (!in_tree) throw ParseError(lineno, "endtree outside tree");
            if (cur.nodes.empty()) throw ParseError(lineno, "empty tree " + cur.id);
            if (cur.root < 0) throw ParseError(lineno, "tree " + cur.id + " has no root");
            cur.finalize();
            if (g.find_tree(cur.id) >= 0) throw ParseError(lineno, "duplicate tree id " + cur.id);
            g.trees.push_back(cur);
            in_tree = false;
        } else if (cmd == "set") {
            if (words.size() < 2) throw ParseError(lineno, "set needs an id");
            TreeSet s;
            s.id = words[1];
            std::string v;
            if (!field(words, "members", v)) throw ParseError(lineno, "set needs members=");
            for (auto& m : split_on(v, ',')) {
                if (m.empty()) throw ParseError(lineno, "empty member name");
                s.members.push_back(m);
            }
            g.sets.push_back(s);
        } else if (cmd == "domlink") {
            // domlink T:N dominates T:N
            if (words.size() != 4 || words[2] != "dominates")
                throw ParseError(lineno, "expected: domlink T:N dominates T:N");
            auto up = split_on(words[1], ':');
            auto lo = split_on(words[3], ':');
            if (up.size() != 2 || lo.size() != 2)
                throw ParseError(lineno, "domlink endpoints must be tree:node");
            DomLink l{up[0], up[1], lo[0], lo[1]};
            bool placed = false;
            for (auto& s : g.sets) {
                bool u = std::find(s.members.begin(), s.members.end(), l.upper_tree) != s.members.end();
                bool w = std::find(s.members.begin(), s.members.end(), l.lower_tree) != s.members.end();
                if (u && w) {
                    s.links.push_back(l);
                    placed = true;
                    break;
                }
            }
            if (!placed) throw ParseError(lineno, "domlink endpoints are not members of one set");
        } else if (cmd == "license") {
            License lic;
            std::string v;
            if (field(words, "lex", v)) {
                lic.by_lexeme = true;
                lic.key = v;
            } else if (field(words, "label", v)) {
                lic.by_lexeme = false;
                lic.key = v;
            } else throw ParseError(lineno, "license needs lex= or label=");
            if (!field(words, "posits", v)) throw ParseError(lineno, "license needs posits=");
            lic.posits = v;
            g.licenses.push_back(lic);
        } else if (cmd == "start") {
            if (words.size() < 2) throw ParseError(lineno, "start needs labels");
            for (auto& l : split_on(words[1], ','))
                if (!l.empty()) g.start_labels.push_back(l);
        } else {
            throw ParseError(lineno, "unknown directive '" + cmd + "'");
        }
    }
    if (in_tree) throw ParseError(lineno, "missing endtree");
    if (g.trees.empty()) throw ParseError(lineno, "no trees declared");

    // cross references
    for (auto& s : g.sets)
        for (auto& m : s.members)
            if (g.find_tree(m) < 0) throw ParseError(lineno, "set " + s.id + " references missing tree " + m);
    return g;
}

inline Grammar parse_grammar_text(const std::string& text) {
    std::istringstream is(text);
    return parse_grammar(is);
}

inline Grammar load_grammar(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open grammar file: " + path);
    return parse_grammar(f);
}

}  // namespace tagload

#include "lstag/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "lstag/export.hpp"

namespace lstag {

namespace {

class GrammarParser {
public:
    explicit GrammarParser(std::string_view text) : text_(text) {}

    GrammarDocument parse() {
        GrammarDocument doc;
        while (true) {
            skip();
            if (pos_ >= text_.size()) break;
            const std::size_t at = pos_;
            std::string kw = word();
            if (kw == "start") {
                if (doc.start) fail_at(at, "duplicate start declaration");
                doc.start = word();
            } else if (kw == "tree") {
                TreeEntry e;
                e.name = word();
                expect("=");
                e.tree = tree();
                doc.trees.push_back(std::move(e));
            } else if (kw == "pair") {
                doc.pairs.push_back(pair());
            } else if (kw == "lspair") {
                doc.lspairs.push_back(lspair());
            } else {
                fail_at(at, "expected 'start', 'tree', 'pair' or 'lspair', found '" + kw + "'");
            }
        }
        return doc;
    }

private:
    void skip() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail_at(std::size_t at, const std::string& msg) const { throw ParseFailure(at, msg); }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure(pos_, msg); }

    static bool name_char(char c) {
        auto u = static_cast<unsigned char>(c);
        return u >= 0x80 || std::isalnum(u) || c == '_' || c == '-' || c == '\'' || c == '.';
    }

    std::string word() {
        skip();
        std::size_t b = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        if (b == pos_) fail("expected a name");
        return std::string(text_.substr(b, pos_ - b));
    }

    bool accept(std::string_view tok) {
        skip();
        if (text_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok) {
        if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
    }

    SyntaxTree tree() {
        skip();
        return detail::parse_tree_prefix(text_, pos_);
    }

    GornAddress address() {
        skip();
        std::size_t b = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (b == pos_ && text_.substr(pos_, std::string_view("ε").size()) == "ε") {
            pos_ += std::string_view("ε").size();
            return {};
        }
        auto a = GornAddress::parse(text_.substr(b, pos_ - b));
        if (b == pos_ || !a) fail_at(b, "expected a Gorn address");
        return *a;
    }

    template <class F>
    void list(F&& item) {
        expect("[");
        if (accept("]")) return;
        do {
            item();
        } while (accept(","));
        expect("]");
    }

    std::vector<Link> links() {
        std::vector<Link> out;
        list([&] {
            Link l;
            l.left = address();
            expect("~");
            l.right = address();
            out.push_back(std::move(l));
        });
        return out;
    }

    std::vector<Link> phis() {
        std::vector<Link> out;
        list([&] {
            Link l;
            l.left = address();
            l.right = accept("~") ? address() : l.left;
            out.push_back(std::move(l));
        });
        return out;
    }

    StagPair pair() {
        StagPair p;
        p.name = word();
        expect("{");
        expect("left:");
        p.left = tree();
        expect("right:");
        p.right = tree();
        expect("links:");
        p.links = links();
        expect("}");
        return p;
    }

    LspairEntry lspair() {
        LspairEntry e;
        e.pair.name = word();
        expect("{");
        expect("left:");
        e.pair.left = tree();
        expect("right:");
        e.pair.right = tree();
        expect("delta:");
        e.pair.delta = links();
        expect("phi:");
        e.pair.phi = phis();
        if (accept("correspond:")) {
            Correspondence c;
            list([&] {
                const std::size_t at = pos_;
                auto l = address();
                expect("->");
                auto r = address();
                if (!c.pairs.emplace(l, r).second) fail_at(at, "left node " + l.to_string() + " corresponds twice");
            });
            e.correspond = std::move(c);
        }
        if (accept("order:")) {
            const std::size_t at = pos_;
            auto w = word();
            if (w == "listed")
                e.order = LinkOrder::Listed;
            else if (w == "gorn")
                e.order = LinkOrder::Gorn;
            else
                fail_at(at, "order must be 'listed' or 'gorn'");
        }
        expect("}");
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string links_text(const std::vector<Link>& links) {
    std::string out = "[";
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (i) out += ", ";
        out += to_string(links[i]);
    }
    return out + "]";
}

std::string phi_text(const std::vector<Link>& links) {
    std::string out = "[";
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (i) out += ", ";
        out += links[i].left == links[i].right ? links[i].left.to_string() : to_string(links[i]);
    }
    return out + "]";
}

}  // namespace

GrammarDocument parse_grammar(std::string_view text) { return GrammarParser(text).parse(); }

std::string print_grammar(const GrammarDocument& doc) {
    std::ostringstream out;
    bool gap = false;
    auto section = [&] {
        if (gap) out << '\n';
        gap = true;
    };
    if (doc.start) {
        section();
        out << "start " << *doc.start << '\n';
    }
    if (!doc.trees.empty()) {
        section();
        for (const auto& t : doc.trees) out << "tree " << t.name << " = " << print_tree(t.tree) << '\n';
    }
    for (const auto& p : doc.pairs) {
        section();
        out << "pair " << p.name << " {\n"
            << "  left: " << print_tree(p.left) << '\n'
            << "  right: " << print_tree(p.right) << '\n'
            << "  links: " << links_text(p.links) << '\n'
            << "}\n";
    }
    for (const auto& e : doc.lspairs) {
        section();
        out << "lspair " << e.pair.name << " {\n"
            << "  left: " << print_tree(e.pair.left) << '\n'
            << "  right: " << print_tree(e.pair.right) << '\n'
            << "  delta: " << links_text(e.pair.delta) << '\n'
            << "  phi: " << phi_text(e.pair.phi) << '\n';
        if (e.correspond) {
            out << "  correspond: [";
            bool first = true;
            for (const auto& [l, r] : e.correspond->pairs) {
                out << (first ? "" : ", ") << l << " -> " << r;
                first = false;
            }
            out << "]\n";
        }
        if (e.order) out << "  order: " << (*e.order == LinkOrder::Listed ? "listed" : "gorn") << '\n';
        out << "}\n";
    }
    return out.str();
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
            ++col;
        }
    }
    return {line, col};
}

namespace {

void sort_by_right(std::vector<Link>& links) {
    std::stable_sort(links.begin(), links.end(), [](const Link& a, const Link& b) { return a.right < b.right; });
}

void collect(Diagnostics& out, const Diagnostics& found, const std::string& where) {
    for (auto d : found) {
        d.where = where;
        out.push_back(std::move(d));
    }
}

}  // namespace

LoadedGrammar load_grammar(const GrammarDocument& doc, const LoadOptions& options) {
    LoadedGrammar g;
    if (doc.start) g.start = *doc.start;
    std::set<std::string> names;
    auto claim = [&](const std::string& name) {
        if (names.insert(name).second) return true;
        g.diagnostics.push_back({ErrorCode::DuplicateName, name, "name defined twice"});
        g.rejected.push_back(name);
        return false;
    };

    for (const auto& t : doc.trees) {
        if (!claim(t.name)) continue;
        try {
            g.tag.add(t.name, t.tree);
        } catch (const Error& e) {
            g.diagnostics.push_back({e.code(), t.name, e.message()});
            g.rejected.push_back(t.name);
        }
    }
    for (const auto& p : doc.pairs) {
        if (!claim(p.name)) continue;
        try {
            g.stag.add(p);
        } catch (const Error& e) {
            g.diagnostics.push_back({e.code(), p.name, e.message()});
            g.rejected.push_back(p.name);
        }
    }
    for (const auto& e : doc.lspairs) {
        if (!claim(e.pair.name)) continue;
        LstagPair pair = e.pair;
        if (e.order.value_or(LinkOrder::Gorn) == LinkOrder::Gorn) {
            sort_by_right(pair.delta);
            sort_by_right(pair.phi);
        }
        Diagnostics found = validate_pair(pair);
        if (e.correspond) {
            if (options.restrictions)
                collect(found, check_left_contiguity(pair, *e.correspond), pair.name);
            else
                collect(found, validate_correspondence(pair, *e.correspond), pair.name);
        }
        if (options.restrictions) collect(found, check_lexical_contiguity(pair.left), pair.name);
        if (!found.empty()) {
            g.diagnostics.insert(g.diagnostics.end(), found.begin(), found.end());
            g.rejected.push_back(pair.name);
            continue;
        }
        g.lstag.add(std::move(pair));
    }
    return g;
}

GrammarDocument read_grammar_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    try {
        if (first != std::string::npos && text[first] == '{') return grammar_from_json(nlohmann::json::parse(text));
        return parse_grammar(text);
    } catch (const ParseFailure& e) {
        auto [line, col] = line_col(text, e.offset());
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                                               e.message());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
}

}  // namespace lstag

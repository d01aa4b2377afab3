#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "../support.hpp"
#include "lstag/export.hpp"
#include "lstag/grammar.hpp"

using namespace lstag;
namespace ts = testing_support;

namespace {

GornAddress addr(const char* s) { return *GornAddress::parse(s); }

std::vector<std::string> grammar_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(ts::source_path("grammars"))) {
        const auto ext = e.path().extension();
        if (ext == ".tag" || ext == ".lstag" || ext == ".stag") out.push_back("grammars/" + e.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("every fixture grammar survives print and JSON round trips") {
    const auto files = grammar_files();
    REQUIRE(files.size() >= 5);
    for (const auto& f : files) {
        CAPTURE(f);
        auto doc = parse_grammar(ts::read_text(f));
        CHECK(doc.trees.size() + doc.lspairs.size() > 0);
        CHECK(parse_grammar(print_grammar(doc)) == doc);
        CHECK(print_grammar(parse_grammar(print_grammar(doc))) == print_grammar(doc));
        CHECK(grammar_from_json(grammar_to_json(doc)) == doc);
        CHECK(grammar_from_json(nlohmann::json::parse(grammar_to_json(doc).dump())) == doc);
    }
}

TEST_CASE("parsing the cooks and eats grammar") {
    auto doc = read_grammar_file(ts::source_path("grammars/cooks_eats.lstag"));
    CHECK(doc.start == "S");
    REQUIRE(doc.lspairs.size() == 4);
    const auto& eats = doc.lspairs[1].pair;
    CHECK(eats.name == "eats");
    CHECK(eats.delta.empty());
    CHECK(eats.phi == std::vector<Link>{{addr("1"), addr("1")}, {addr("2.2"), addr("2.2")}});
    auto g = load_grammar(doc);
    CHECK(g.diagnostics.empty());
    CHECK(g.start == "S");
    CHECK(g.lstag.find("eats") != nullptr);
}

TEST_CASE("mixed entries and pair links") {
    const char* text =
        "start S\n"
        "tree t = S(A(\"a\"))\n"
        "pair p { left: S(NP!) right: S(NP!) links: [1~1] }\n"
        "pair q { left: NP(N(\"n\")) right: NP(N(\"n\")) links: [] }\n";
    auto doc = parse_grammar(text);
    REQUIRE(doc.trees.size() == 1);
    REQUIRE(doc.pairs.size() == 2);
    CHECK(doc.pairs[0].links == std::vector<Link>{{addr("1"), addr("1")}});
    auto g = load_grammar(doc);
    CHECK(g.diagnostics.empty());
    CHECK(g.tag.find("t") != nullptr);
    CHECK(g.stag.find("q") != nullptr);
}

TEST_CASE("delta and phi are sorted by right endpoint unless listed order is asked for") {
    const char* body =
        "lspair h {\n"
        "  left: S(A! B!)\n"
        "  right: S(B! A!)\n"
        "  delta: [1~2, 2~1]\n"
        "  phi: []\n";
    auto sorted = load_grammar(parse_grammar(std::string(body) + "}\n"));
    REQUIRE(sorted.diagnostics.empty());
    CHECK(sorted.lstag.at("h").delta == std::vector<Link>{{addr("2"), addr("1")}, {addr("1"), addr("2")}});
    auto listed = load_grammar(parse_grammar(std::string(body) + "  order: listed\n}\n"));
    REQUIRE(listed.diagnostics.empty());
    CHECK(listed.lstag.at("h").delta == std::vector<Link>{{addr("1"), addr("2")}, {addr("2"), addr("1")}});
}

TEST_CASE("parse errors point at line and column") {
    const std::string text = "start S\n\ntree a = S(NP!!)\n";
    try {
        parse_grammar(text);
        FAIL("accepted");
    } catch (const ParseFailure& e) {
        auto [line, col] = line_col(text, e.offset());
        CHECK(line == 3);
        CHECK(col == 15);
    }
    CHECK(line_col("ab\ncd", 0) == std::pair<std::size_t, std::size_t>{1, 1});
    CHECK(line_col("ab\ncd", 4) == std::pair<std::size_t, std::size_t>{2, 2});
    for (const char* bad : {"tree = S", "tree a S", "lspair x { left: S }", "pair p { left: S right: S links: [1] }",
                            "lspair x { left: S right: S delta: [] phi: [x] }", "bogus", "start",
                            "tree a = S(NP!", "tree bad = S(A* B*)"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_grammar(bad), ParseFailure);
    }

    const auto path = (std::filesystem::temp_directory_path() / "lstag_bad_grammar.tag").string();
    std::ofstream(path) << text;
    try {
        read_grammar_file(path);
        FAIL("accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ParseError);
        CHECK(std::string(e.what()).find(path + ":3:15: ") != std::string::npos);
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_grammar_file("/nonexistent/grammar.tag"), Error);
}

TEST_CASE("load diagnostics name the entry and keep the rest") {
    const char* text =
        "tree a = S(A(\"a\"))\n"
        "tree a = S(B(\"b\"))\n"
        "pair p { left: S(A) right: S(B) links: [2~1] }\n"
        "lspair q { left: S(NP!) right: S(NP!) delta: [1~1] phi: [1~1] }\n"
        "lspair r { left: S(NP!) right: S(NP!) delta: [1~1] phi: [] }\n";
    auto g = load_grammar(parse_grammar(text));
    CHECK(g.tag.find("a") != nullptr);
    CHECK(g.lstag.find("r") != nullptr);
    CHECK(g.rejected == std::vector<std::string>{"a", "p", "q"});
    REQUIRE(g.diagnostics.size() >= 3);
    CHECK(g.diagnostics[0].code == ErrorCode::DuplicateName);
    CHECK(g.diagnostics[0].where == "a");
    CHECK(g.diagnostics[1].code == ErrorCode::EndpointUnresolved);
    CHECK(g.diagnostics[1].where == "p");
    CHECK(g.diagnostics[1].message == "p: link 2~1: no left node");
    CHECK(g.diagnostics[2].code == ErrorCode::NotDisjoint);
    CHECK(g.diagnostics[2].where == "q");
}

TEST_CASE("the shipped restriction examples are rejected only with restrictions on") {
    for (const char* f : {"grammars/topicalization.lstag", "grammars/excised.lstag"}) {
        auto doc = read_grammar_file(ts::source_path(f));
        CHECK_FALSE(load_grammar(doc).diagnostics.empty());
        CHECK(load_grammar(doc, {false}).diagnostics.empty());
    }
    CHECK(load_grammar(read_grammar_file(ts::source_path("grammars/cooked.tag"))).diagnostics.empty());
    CHECK(load_grammar(read_grammar_file(ts::source_path("grammars/degenerate.lstag"))).diagnostics.empty());
}

TEST_CASE("JSON grammar files load like bracketed ones") {
    auto doc = read_grammar_file(ts::source_path("grammars/cooks_eats.lstag"));
    const auto path = (std::filesystem::temp_directory_path() / "lstag_grammar.json").string();
    std::ofstream(path) << grammar_to_json(doc).dump(2);
    CHECK(read_grammar_file(path) == doc);
    std::remove(path.c_str());
}

TEST_CASE("random documents round trip") {
    ts::TreeGen gen(31);
    const std::vector<std::string> labels{"S", "NP"};
    for (int round = 0; round < 100; ++round) {
        GrammarDocument doc;
        if (gen.coin()) doc.start = "S";
        for (int i = 0; i < 3; ++i) doc.trees.push_back({"t" + std::to_string(i), gen.tree(8, labels)});
        LspairEntry e{{"l", gen.tree(6, labels), gen.tree(6, labels), {}, {}}, std::nullopt, std::nullopt};
        std::vector<GornAddress> la, ra;
        for (const auto& [a, n] : e.pair.left.nodes()) la.push_back(a);
        for (const auto& [a, n] : e.pair.right.nodes()) ra.push_back(a);
        for (int i = 0; i < 3; ++i) {
            e.pair.delta.push_back({la[gen.pick(la.size())], ra[gen.pick(ra.size())]});
            if (gen.coin()) e.pair.phi.push_back({la[gen.pick(la.size())], ra[gen.pick(ra.size())]});
        }
        if (gen.coin()) e.order = gen.coin() ? LinkOrder::Listed : LinkOrder::Gorn;
        if (gen.coin()) e.correspond = Correspondence{{{GornAddress{}, GornAddress{}}}};
        doc.lspairs.push_back(e);
        CHECK(parse_grammar(print_grammar(doc)) == doc);
        CHECK(grammar_from_json(grammar_to_json(doc)) == doc);
    }
}

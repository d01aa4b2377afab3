#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lstag/lstag.hpp"
#include "lstag/restrict.hpp"
#include "lstag/stag.hpp"
#include "lstag/tag.hpp"

namespace lstag {

// Grammar files, EBNF:
//
//   document  = { entry } ;
//   entry     = "start" SYMBOL
//             | "tree" NAME "=" TREE
//             | "pair" NAME "{" "left:" TREE "right:" TREE "links:" links "}"
//             | "lspair" NAME "{" "left:" TREE "right:" TREE
//                               "delta:" links "phi:" phis
//                               [ "correspond:" corr ] [ "order:" ( "listed" | "gorn" ) ] "}" ;
//   links     = "[" [ link { "," link } ] "]" ;     link = ADDR "~" ADDR ;
//   phis      = "[" [ phi { "," phi } ] "]" ;       phi  = ADDR [ "~" ADDR ] ;
//   corr      = "[" [ ADDR "->" ADDR { "," ADDR "->" ADDR } ] "]" ;
//
// `#` starts a comment that runs to the end of the line. A phi entry written
// as a single address is the reflexive link on that address. Without
// `order: listed`, delta and phi lists are put in ascending Gorn order of
// their right endpoints when the grammar is loaded.

enum class LinkOrder { Gorn, Listed };

struct LspairEntry {
    LstagPair pair;
    std::optional<Correspondence> correspond;
    std::optional<LinkOrder> order;

    bool operator==(const LspairEntry&) const = default;
};

struct TreeEntry {
    std::string name;
    SyntaxTree tree;

    bool operator==(const TreeEntry&) const = default;
};

struct GrammarDocument {
    std::optional<std::string> start;
    std::vector<TreeEntry> trees;
    std::vector<StagPair> pairs;
    std::vector<LspairEntry> lspairs;

    bool operator==(const GrammarDocument&) const = default;
};

GrammarDocument parse_grammar(std::string_view text);  // throws ParseFailure
std::string print_grammar(const GrammarDocument& doc);

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset);

struct LoadOptions {
    bool restrictions = true;
};

// A loaded grammar keeps only the entries that passed every check; the rest
// are reported in `diagnostics` (with `where` = entry name) and listed in
// `rejected`.
struct LoadedGrammar {
    std::string start = "S";
    TagGrammar tag;
    StagGrammar stag;
    LstagGrammar lstag;
    Diagnostics diagnostics;
    std::vector<std::string> rejected;
};

LoadedGrammar load_grammar(const GrammarDocument& doc, const LoadOptions& options = {});

// Reads a grammar file (bracketed text, or JSON when the content starts with
// '{'). Throws Error(ParseError) with "path:line:col: message" on failure.
GrammarDocument read_grammar_file(const std::string& path);

}  // namespace lstag

#pragma once

#include <json.hpp>
#include <string>

#include "lstag/grammar.hpp"
#include "lstag/lstag.hpp"
#include "lstag/tag.hpp"

namespace lstag {

// {name, children: [{addr, node}]}
nlohmann::json to_json(const DerivationTree& d);
nlohmann::json to_json(const DerivationGraph& g);
nlohmann::json to_json(const DerivedStructure& d);
nlohmann::json to_json(const Diagnostic& d);

nlohmann::json grammar_to_json(const GrammarDocument& doc);
GrammarDocument grammar_from_json(const nlohmann::json& j);  // throws nlohmann::json::exception

// Graphviz renderings. Node ids are assigned in address order, so output is
// deterministic.
std::string dot_tree(const SyntaxTree& t, const std::string& graph_name = "tree");
// Derivation tree with address-labelled edges beside the derived tree.
std::string dot_tag_derivation(const DerivationTree& d, const SyntaxTree& derived);
// Left tree, right DAG (each shared fragment drawn once with one incoming
// edge per parent slot), and both derivation projections.
std::string dot_derived(const DerivedStructure& d);
// Both derivation trees of a synchronous derivation beside both derived trees.
std::string dot_pair_derivation(const DerivationTree& left_derivation, const DerivationTree& right_derivation,
                                const SyntaxTree& left, const SyntaxTree& right);
// One cluster per tree of the grammar document.
std::string dot_grammar(const GrammarDocument& doc);

std::string text_derived(const DerivedStructure& d);

}  // namespace lstag

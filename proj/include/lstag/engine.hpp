#pragma once

// Bounded breadth-first enumeration of derivations.
//
// Every derivation of at most `max_operations` operations that starts from an
// initial tree (or pair) rooted in the start symbol is produced once,
// including unfinished ones. Two operation sequences that build the same
// derivation in a different order count as one derivation. Results are sorted
// by yield, then operation count, then derivation key.

#include <string>
#include <vector>

#include "lstag/lstag.hpp"
#include "lstag/tag.hpp"

namespace lstag {

struct EnumerationBudget {
    std::size_t max_operations = 3;
    std::size_t max_structures = 100000;
};

// Throws std::invalid_argument unless both limits are at least 1.
void check_budget(const EnumerationBudget& b);

struct TagResult {
    DerivationTree derivation;
    SyntaxTree derived;
    std::string yield;  // partial yield when incomplete
    bool complete = false;
    std::size_t operations = 0;
    std::string key;  // canonical_string(derivation)
};

struct TagEnumeration {
    std::vector<TagResult> results;
    bool truncated = false;  // max_structures was reached
};

TagEnumeration enumerate(const TagGrammar& grammar, const std::string& start, const EnumerationBudget& budget);

struct LstagResult {
    DerivedStructure structure;
    std::string yield;  // left yield; partial when incomplete
    bool complete = false;
    std::size_t operations = 0;
    std::string key;  // derivation_key(structure)
};

struct LstagEnumeration {
    std::vector<LstagResult> results;
    bool truncated = false;
};

LstagEnumeration enumerate(const LstagGrammar& grammar, const std::string& start, const EnumerationBudget& budget);

// Distinct complete yields, sorted.
std::vector<std::string> language_sample(const TagEnumeration& e);
std::vector<std::string> language_sample(const LstagEnumeration& e);
std::vector<std::string> language_sample(const TagGrammar& grammar, const std::string& start,
                                         const EnumerationBudget& budget);
std::vector<std::string> language_sample(const LstagGrammar& grammar, const std::string& start,
                                         const EnumerationBudget& budget);

}  // namespace lstag

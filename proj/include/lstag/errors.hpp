#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lstag {

enum class ErrorCode {
    AddressNotFound,
    NotASlot,
    NotInterior,
    SymbolMismatch,
    ClassMismatch,
    IncompleteTree,
    MalformedTree,
    UnknownTree,
    EdgeAddressInvalid,
    DuplicateEdge,
    OperationMismatch,
    LinkNotFound,
    SharedGroupSite,
    CardinalityViolation,
    GroupNotLive,
    InconsistentHistory,
    NotReflexive,
    NotDisjoint,
    EndpointUnresolved,
    Discontiguous,
    LexicallyDiscontiguous,
    BadCorrespondence,
    DuplicateName,
    ParseError,
    BudgetExceeded,
};

std::string_view to_string(ErrorCode code);

// Thrown by every composition operation. The code is stable; the message is
// for humans.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), message_(message) {}

    ErrorCode code() const noexcept { return code_; }
    // what() without the code prefix.
    const std::string& message() const noexcept { return message_; }

private:
    ErrorCode code_;
    std::string message_;
};

// Text-format failure at a byte offset into the parsed input. Front ends turn
// the offset into line:column.
class ParseFailure : public Error {
public:
    ParseFailure(std::size_t offset, const std::string& message)
        : Error(ErrorCode::ParseError, message), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

// Non-throwing checks report a list of these. `where` locates the problem
// (a derivation path, a pair name, a line:column) and is free-form.
struct Diagnostic {
    ErrorCode code;
    std::string where;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace lstag

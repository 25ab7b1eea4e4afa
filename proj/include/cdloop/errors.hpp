#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cdloop {

enum class ErrorCode {
    // table validation
    NotSquare,
    IdentityNotAtZero,
    NotAPermutationRow,
    NotAPermutationCol,
    // subloops / quotients
    NotASubloop,
    NotNormal,
    // involutions
    MovesIdentity,
    NotAPermutation,
    NotOrderTwo,
    NotAntiHom,
    MissingInvolution,
    // doubling parameters
    GammaNotCentral,
    EpsilonNotCentral,
    EpsilonNotOrderTwo,
    EpsilonGammaNotSymmetric,
    NotAssociative,
    OddCenter,
    OrderCapExceeded,
    // analysis
    NotInZAE2,
    GammaNotSymmetricCentral,
    DimTooSmall,
    JInU,
    QuotientNotElementaryAbelian,
    // term language
    SyntaxError,
    UnboundVariable,
    JNotAllowed,
};

const char* error_code_name(ErrorCode c);

/// Library-wide exception. `witness` carries the offending indices
/// (row, column, element ids, or a source position for parse errors).
class LoopError : public std::runtime_error {
public:
    LoopError(ErrorCode code, const std::string& msg, std::vector<int> witness = {})
        : std::runtime_error(msg), code_(code), witness_(std::move(witness)) {}

    ErrorCode code() const { return code_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    ErrorCode code_;
    std::vector<int> witness_;
};

} // namespace cdloop

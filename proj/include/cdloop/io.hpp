#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "cdloop/involution.hpp"
#include "cdloop/loop.hpp"

namespace cdloop {

struct LoopDocument {
    LoopTable loop;
    std::optional<Involution> star;
};

/// Loop exchange format: a JSON document with the fields, in order,
///   "order": n, "names": [n strings], "table": n x n 0-based entries,
///   and optionally "involution": [n integers].
/// The identity must be index 0. The writer is canonical: fields in the
/// order above, one table row per line.
std::string write_loop(const LoopTable& L, const Involution* star = nullptr);

LoopDocument read_loop(std::istream& in);
LoopDocument read_loop_text(const std::string& text);

/// Reads from a path, with "-" meaning standard input.
LoopDocument read_loop_path(const std::string& path);

} // namespace cdloop

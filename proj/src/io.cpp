#include "cdloop/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace cdloop {

std::string write_loop(const LoopTable& L, const Involution* star) {
    const int n = L.order();
    std::ostringstream out;
    out << "{\n";
    out << "  \"order\": " << n << ",\n";
    out << "  \"names\": " << nlohmann::json(L.names()).dump() << ",\n";
    out << "  \"table\": [\n";
    for (int i = 0; i < n; i++) {
        out << "    [";
        for (int j = 0; j < n; j++) {
            if (j) out << ", ";
            out << L.mul(static_cast<Elem>(i), static_cast<Elem>(j));
        }
        out << (i + 1 < n ? "],\n" : "]\n");
    }
    out << "  ]";
    if (star) {
        out << ",\n  \"involution\": [";
        for (int i = 0; i < n; i++) {
            if (i) out << ", ";
            out << (*star)(static_cast<Elem>(i));
        }
        out << "]";
    }
    out << "\n}\n";
    return out.str();
}

LoopDocument read_loop_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw LoopError(ErrorCode::SyntaxError, std::string("bad loop file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("order") || !doc.contains("table") ||
        !doc.contains("names"))
        throw LoopError(ErrorCode::SyntaxError,
                        "loop file needs order, names and table fields");
    const int n = doc["order"].get<int>();
    auto names = doc["names"].get<std::vector<std::string>>();
    auto table = doc["table"].get<std::vector<std::vector<int>>>();
    if (static_cast<int>(table.size()) != n)
        throw LoopError(ErrorCode::NotSquare, "table size does not match order");
    LoopDocument out{LoopTable::validate(table, std::move(names)), std::nullopt};
    if (doc.contains("involution")) {
        auto perm = doc["involution"].get<std::vector<int>>();
        std::vector<Elem> p;
        for (int v : perm) {
            if (v < 0 || v >= n)
                throw LoopError(ErrorCode::NotAPermutation, "involution entry out of range");
            p.push_back(static_cast<Elem>(v));
        }
        out.star = Involution::validate(out.loop, std::move(p));
    }
    return out;
}

LoopDocument read_loop(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return read_loop_text(ss.str());
}

LoopDocument read_loop_path(const std::string& path) {
    if (path == "-") return read_loop(std::cin);
    std::ifstream f(path);
    if (!f)
        throw LoopError(ErrorCode::SyntaxError, "cannot open " + path);
    return read_loop(f);
}

} // namespace cdloop

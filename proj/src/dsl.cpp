#include "voxelsmith/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace voxelsmith {
namespace dsl {

namespace {

struct Token {
    enum Kind { word, number, lparen, rparen, comma, end };
    Kind kind = end;
    std::string text;
    long value = 0;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    Token next() {
        skip_ws_and_comments();
        Token t;
        t.line = line_;
        t.column = column_;
        if (pos_ >= text_.size()) return t;

        char c = text_[pos_];
        if (c == '(') return simple(Token::lparen, "(");
        if (c == ')') return simple(Token::rparen, ")");
        if (c == ',') return simple(Token::comma, ",");

        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) advance();
            t.kind = Token::number;
            t.text = text_.substr(start, pos_ - start);
            if (t.text == "-") throw Error("expected digits after '-'", t.line, t.column);
            t.value = std::stol(t.text);
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                advance();
            }
            t.kind = Token::word;
            t.text = text_.substr(start, pos_ - start);
            return t;
        }
        throw Error(std::string("unexpected character '") + c + "'", line_, column_);
    }

private:
    Token simple(Token::Kind k, std::string text) {
        Token t;
        t.kind = k;
        t.text = std::move(text);
        t.line = line_;
        t.column = column_;
        advance();
        return t;
    }

    void skip_ws_and_comments() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

class Parser {
public:
    Parser(const std::string& text, const BlockRegistry& registry)
        : lexer_(text), registry_(registry) {
        advance();
    }

    Program parse() {
        Program prog;
        if (cur_.kind == Token::end) throw Error("empty program", cur_.line, cur_.column);
        while (cur_.kind != Token::end) {
            prog.statements.push_back(statement());
        }
        return prog;
    }

private:
    Statement statement() {
        if (cur_.kind != Token::word) {
            throw Error("expected a statement keyword, got '" + cur_.text + "'", cur_.line, cur_.column);
        }
        const std::string kw = cur_.text;
        const Token kw_tok = cur_;
        advance();
        if (kw == "place") {
            Place s;
            s.block = block_id();
            s.at = coord();
            if (cur_.kind == Token::word && cur_.text == "facing") {
                advance();
                s.facing = direction();
            }
            return s;
        }
        if (kw == "fill" || kw == "shell" || kw == "line") {
            std::string id = block_id();
            Coord a = coord();
            Coord b = coord();
            if (kw == "fill") return Fill{id, a, b};
            if (kw == "shell") return Shell{id, a, b};
            return Line{id, a, b};
        }
        if (kw == "pyramid") {
            Pyramid s;
            s.block = block_id();
            s.base_corner = coord();
            s.base_size = integer("base size");
            if (s.base_size < 1) throw Error("pyramid base size must be >= 1", kw_tok.line, kw_tok.column);
            if (cur_.kind == Token::word && cur_.text == "step") {
                advance();
                s.step = integer("step");
                if (s.step < 1) throw Error("pyramid step must be >= 1", kw_tok.line, kw_tok.column);
            }
            return s;
        }
        throw Error("unknown statement '" + kw + "'", kw_tok.line, kw_tok.column);
    }

    std::string block_id() {
        if (cur_.kind != Token::word) {
            throw Error("expected a block id, got '" + cur_.text + "'", cur_.line, cur_.column);
        }
        if (!registry_.known(cur_.text)) {
            throw Error("unknown block id '" + cur_.text + "'", cur_.line, cur_.column);
        }
        std::string id = cur_.text;
        advance();
        return id;
    }

    Facing direction() {
        if (cur_.kind == Token::word) {
            if (auto f = facing_from_string(cur_.text)) {
                advance();
                return *f;
            }
        }
        throw Error("expected north|south|east|west, got '" + cur_.text + "'", cur_.line, cur_.column);
    }

    int integer(const std::string& what) {
        if (cur_.kind != Token::number) {
            throw Error("expected " + what + ", got '" + cur_.text + "'", cur_.line, cur_.column);
        }
        int v = int(cur_.value);
        advance();
        return v;
    }

    Coord coord() {
        expect(Token::lparen, "(");
        int x = integer("x");
        expect(Token::comma, ",");
        int y = integer("y");
        expect(Token::comma, ",");
        int z = integer("z");
        expect(Token::rparen, ")");
        return {x, y, z};
    }

    void expect(Token::Kind k, const std::string& what) {
        if (cur_.kind != k) {
            throw Error("expected '" + what + "', got '" + (cur_.kind == Token::end ? "end of input" : cur_.text) + "'",
                        cur_.line, cur_.column);
        }
        advance();
    }

    void advance() { cur_ = lexer_.next(); }

    Lexer lexer_;
    const BlockRegistry& registry_;
    Token cur_;
};

BoundingBox normalized_box(const Coord& a, const Coord& b) {
    return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
            {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
}

/// Placement accumulator with last-wins override and air-as-carve.
class Canvas {
public:
    void put(const std::string& id, const Coord& at, std::optional<Facing> facing) {
        auto it = index_.find(at);
        if (id == kAirId) {
            if (it != index_.end()) {
                cells_[it->second].erased = true;
                index_.erase(it);
            }
            return;
        }
        if (it != index_.end()) {
            cells_[it->second].p = {id, at, facing};
            return;
        }
        index_.emplace(at, cells_.size());
        cells_.push_back({{id, at, facing}, false});
    }

    Blueprint finish(const std::string& name) {
        Blueprint bp;
        bp.name = name;
        for (auto& c : cells_) {
            if (!c.erased) bp.placements.push_back(std::move(c.p));
        }
        return bp;
    }

private:
    struct Cell {
        Placement p;
        bool erased;
    };
    std::vector<Cell> cells_;
    std::unordered_map<Coord, std::size_t, CoordHash> index_;
};

struct Expander {
    Canvas& canvas;

    void operator()(const Place& s) { canvas.put(s.block, s.at, s.facing); }

    void operator()(const Fill& s) {
        const BoundingBox box = normalized_box(s.from, s.to);
        for (int y = box.min.y; y <= box.max.y; ++y)
            for (int x = box.min.x; x <= box.max.x; ++x)
                for (int z = box.min.z; z <= box.max.z; ++z) canvas.put(s.block, {x, y, z}, std::nullopt);
    }

    void operator()(const Shell& s) {
        const BoundingBox box = normalized_box(s.from, s.to);
        for (int y = box.min.y; y <= box.max.y; ++y)
            for (int x = box.min.x; x <= box.max.x; ++x)
                for (int z = box.min.z; z <= box.max.z; ++z) {
                    const bool boundary = x == box.min.x || x == box.max.x || y == box.min.y ||
                                          y == box.max.y || z == box.min.z || z == box.max.z;
                    if (boundary) canvas.put(s.block, {x, y, z}, std::nullopt);
                }
    }

    void operator()(const Line& s) {
        const Coord d = s.to - s.from;
        const int n = std::max({std::abs(d.x), std::abs(d.y), std::abs(d.z)});
        if (n == 0) {
            canvas.put(s.block, s.from, std::nullopt);
            return;
        }
        auto aligned = [n](int c) { return c == 0 || std::abs(c) == n; };
        if (!aligned(d.x) || !aligned(d.y) || !aligned(d.z)) {
            throw Error("line endpoints are not axis-aligned or 45-degree diagonal");
        }
        const Coord step{d.x == 0 ? 0 : d.x / n, d.y == 0 ? 0 : d.y / n, d.z == 0 ? 0 : d.z / n};
        Coord c = s.from;
        for (int i = 0; i <= n; ++i) {
            canvas.put(s.block, c, std::nullopt);
            c = c + step;
        }
    }

    void operator()(const Pyramid& s) {
        int side = s.base_size;
        int level = 0;
        while (side >= 1) {
            const int inset = (s.base_size - side) / 2;
            for (int x = 0; x < side; ++x)
                for (int z = 0; z < side; ++z) {
                    canvas.put(s.block,
                               {s.base_corner.x + inset + x, s.base_corner.y + level,
                                s.base_corner.z + inset + z},
                               std::nullopt);
                }
            side -= s.step;
            ++level;
        }
    }
};

}  // namespace

Program parse(const std::string& text, const BlockRegistry& registry) {
    return Parser(text, registry).parse();
}

Blueprint compile(const Program& prog, const std::string& name) {
    Canvas canvas;
    Expander expander{canvas};
    for (std::size_t i = 0; i < prog.statements.size(); ++i) {
        try {
            std::visit(expander, prog.statements[i]);
        } catch (const Error& e) {
            throw Error("statement " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return canvas.finish(name);
}

}  // namespace dsl
}  // namespace voxelsmith

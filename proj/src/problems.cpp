#include "kts/problems.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kts/machine_programs.hpp"

namespace kts {

VerifyResult verify_identity(const BitString& x, const BitString& w) {
    size_t m = std::min(w.size(), x.size());
    bool equal = w.size() == x.size();
    for (size_t i = 0; i < m; ++i) {
        if (w[i] != x[i]) equal = false;
    }
    return {equal, uint64_t(m) + 1};
}

VerifyResult verify_3col(const Graph& g, const BitString& w) {
    uint64_t decode_cost = uint64_t(g.n);
    auto colors = decode_coloring(w, g.n);
    if (!colors) return {false, decode_cost + 1};
    bool ok = true;
    for (const auto& [u, v] : g.edges) {
        if ((*colors)[u] == (*colors)[v]) ok = false;
    }
    return {ok, decode_cost + g.edges.size() + 1};
}

VerifyResult verify_sat(const CnfFormula& f, const BitString& w) {
    uint64_t decode_cost = uint64_t(f.num_vars);
    auto assignment = decode_assignment(w, f.num_vars);
    if (!assignment) return {false, decode_cost + 1};
    uint64_t literals = 0;
    bool ok = true;
    for (const auto& clause : f.clauses) {
        bool clause_true = false;
        for (int lit : clause) {
            ++literals;
            int var = std::abs(lit) - 1;
            bool value = (*assignment)[var] != 0;
            if ((lit > 0) == value) clause_true = true;
        }
        if (!clause_true) ok = false;
    }
    return {ok, decode_cost + literals + 1};
}

VerifyResult verify_tiling(const TilingInstance& t, const BitString& w) {
    uint64_t cells = uint64_t(t.n) * t.n;
    auto placement = decode_placement(w, int(cells), int(t.tiles.size()));
    if (!placement) return {false, cells + 1};
    // Full cost regardless of where a mismatch shows up.
    uint64_t steps = cells + 2ull * t.n * (t.n - 1) + 4ull * t.n + t.pinned.size() + 1;
    bool ok = true;
    auto tile_at = [&](int r, int c) -> const Tile& { return t.tiles[(*placement)[r * t.n + c]]; };
    for (int r = 0; r < t.n; ++r) {
        for (int c = 0; c + 1 < t.n; ++c) {
            if (tile_at(r, c).east != tile_at(r, c + 1).west) ok = false;
        }
    }
    for (int r = 0; r + 1 < t.n; ++r) {
        for (int c = 0; c < t.n; ++c) {
            if (tile_at(r, c).south != tile_at(r + 1, c).north) ok = false;
        }
    }
    for (int i = 0; i < t.n; ++i) {
        if (tile_at(0, i).north != t.border_color) ok = false;
        if (tile_at(t.n - 1, i).south != t.border_color) ok = false;
        if (tile_at(i, 0).west != t.border_color) ok = false;
        if (tile_at(i, t.n - 1).east != t.border_color) ok = false;
    }
    for (const auto& [r, c, idx] : t.pinned) {
        if ((*placement)[r * t.n + c] != idx) ok = false;
    }
    return {ok, steps};
}

// --- Codecs ---------------------------------------------------------------------

BitString encode_coloring(const std::vector<int>& colors) {
    BitString w;
    w.reserve(colors.size() * 2);
    for (int c : colors) {
        w.push_back((c >> 1) & 1);
        w.push_back(c & 1);
    }
    return w;
}

std::optional<std::vector<int>> decode_coloring(const BitString& w, int n) {
    if (w.size() != size_t(n) * 2) return std::nullopt;
    std::vector<int> colors(n);
    for (int i = 0; i < n; ++i) {
        int c = (w[2 * i] << 1) | w[2 * i + 1];
        if (c == 3) return std::nullopt;
        colors[i] = c;
    }
    return colors;
}

BitString encode_assignment(const std::vector<uint8_t>& values) {
    BitString w;
    w.reserve(values.size());
    for (uint8_t v : values) w.push_back(v);
    return w;
}

std::optional<std::vector<uint8_t>> decode_assignment(const BitString& w, int num_vars) {
    if (w.size() != size_t(num_vars)) return std::nullopt;
    std::vector<uint8_t> values(num_vars);
    for (int i = 0; i < num_vars; ++i) values[i] = w[i];
    return values;
}

int index_width(int range) {
    int w = 1;
    while ((1 << w) < range) ++w;
    return w;
}

BitString encode_placement(const std::vector<int>& tile_indices, int tile_count) {
    int width = index_width(tile_count);
    BitString w;
    w.reserve(tile_indices.size() * width);
    for (int idx : tile_indices) {
        for (int b = width - 1; b >= 0; --b) w.push_back((idx >> b) & 1);
    }
    return w;
}

std::optional<std::vector<int>> decode_placement(const BitString& w, int cells, int tile_count) {
    int width = index_width(tile_count);
    if (w.size() != size_t(cells) * width) return std::nullopt;
    std::vector<int> out(cells);
    for (int i = 0; i < cells; ++i) {
        int v = 0;
        for (int b = 0; b < width; ++b) v = (v << 1) | w[size_t(i) * width + b];
        if (v >= tile_count) return std::nullopt;
        out[i] = v;
    }
    return out;
}

// --- Instance encodings ------------------------------------------------------------

BitString encode_graph(const Graph& g) {
    if (g.n < 1) throw std::invalid_argument("encode_graph: need at least one vertex");
    BitString x = gamma_encode(uint32_t(g.n));
    x.append(gamma_encode(uint32_t(g.edges.size() + 1)));  // gamma needs >= 1; store m+1
    int w = index_width(g.n);
    for (const auto& [u, v] : g.edges) {
        for (int b = w - 1; b >= 0; --b) x.push_back((u >> b) & 1);
        for (int b = w - 1; b >= 0; --b) x.push_back((v >> b) & 1);
    }
    return x;
}

BitString encode_cnf(const CnfFormula& f) {
    if (f.num_vars < 1) throw std::invalid_argument("encode_cnf: need at least one variable");
    BitString x = gamma_encode(uint32_t(f.num_vars));
    x.append(gamma_encode(uint32_t(f.clauses.size() + 1)));
    int w = index_width(f.num_vars);
    for (const auto& clause : f.clauses) {
        x.append(gamma_encode(uint32_t(clause.size())));
        for (int lit : clause) {
            x.push_back(lit > 0 ? 1 : 0);
            int var = std::abs(lit) - 1;
            for (int b = w - 1; b >= 0; --b) x.push_back((var >> b) & 1);
        }
    }
    return x;
}

BitString encode_tiling(const TilingInstance& t) {
    BitString x = gamma_encode(uint32_t(t.n));
    x.append(gamma_encode(uint32_t(t.tiles.size())));
    x.append(gamma_encode(uint32_t(t.num_colors)));
    int w = index_width(t.num_colors);
    auto push_color = [&](int c) {
        for (int b = w - 1; b >= 0; --b) x.push_back((c >> b) & 1);
    };
    for (const Tile& tile : t.tiles) {
        push_color(tile.north);
        push_color(tile.east);
        push_color(tile.south);
        push_color(tile.west);
    }
    push_color(t.border_color);
    return x;
}

// --- Validation ----------------------------------------------------------------------

void validate(const Graph& g) {
    if (g.n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (const auto& [u, v] : g.edges) {
        if (u == v) throw std::invalid_argument("graph: self-loop");
        if (u < 0 || v < 0 || u >= g.n || v >= g.n)
            throw std::invalid_argument("graph: vertex index out of range");
    }
}

void validate(const CnfFormula& f) {
    if (f.num_vars < 0) throw std::invalid_argument("cnf: negative variable count");
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw std::invalid_argument("cnf: empty clause");
        for (int lit : clause) {
            if (lit == 0 || std::abs(lit) > f.num_vars)
                throw std::invalid_argument("cnf: literal out of range");
        }
    }
}

void validate(const TilingInstance& t) {
    if (t.n < 1) throw std::invalid_argument("tiling: grid side must be >= 1");
    if (t.tiles.empty()) throw std::invalid_argument("tiling: no tiles");
    auto check_color = [&](int c) {
        if (c < 0 || c >= t.num_colors) throw std::invalid_argument("tiling: color out of range");
    };
    for (const Tile& tile : t.tiles) {
        check_color(tile.north);
        check_color(tile.east);
        check_color(tile.south);
        check_color(tile.west);
    }
    check_color(t.border_color);
    for (const auto& [r, c, idx] : t.pinned) {
        if (r < 0 || r >= t.n || c < 0 || c >= t.n || idx < 0 || idx >= int(t.tiles.size()))
            throw std::invalid_argument("tiling: pinned cell out of range");
    }
}

// --- Task factories --------------------------------------------------------------------

InversionTask make_identity_task(const BitString& x) {
    InversionTask task;
    task.name = "identity";
    task.x = x;
    task.verifier = [x](const BitString& w) { return verify_identity(x, w); };
    task.verifier_program = compile_identity_checker(x);
    task.witness_bits = uint32_t(x.size());
    return task;
}

InversionTask make_3col_task(const Graph& g) {
    validate(g);
    InversionTask task;
    task.name = "3col";
    task.x = encode_graph(g);
    task.verifier = [g](const BitString& w) { return verify_3col(g, w); };
    task.verifier_program = compile_3col_checker(g);
    task.witness_bits = uint32_t(2 * g.n);
    return task;
}

InversionTask make_sat_task(const CnfFormula& f) {
    validate(f);
    InversionTask task;
    task.name = "sat";
    task.x = encode_cnf(f);
    task.verifier = [f](const BitString& w) { return verify_sat(f, w); };
    task.verifier_program = compile_sat_checker(f);
    task.witness_bits = uint32_t(f.num_vars);
    return task;
}

InversionTask make_tiling_task(const TilingInstance& t) {
    validate(t);
    InversionTask task;
    task.name = "tiling";
    task.x = encode_tiling(t);
    task.verifier = [t](const BitString& w) { return verify_tiling(t, w); };
    task.witness_bits = uint32_t(t.n) * t.n * index_width(int(t.tiles.size()));
    return task;
}

// --- File IO -----------------------------------------------------------------------------

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, 0, "cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Splits a line into whitespace-separated tokens with their column positions.
std::vector<std::pair<std::string, int>> tokenize(const std::string& line) {
    std::vector<std::pair<std::string, int>> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(uint8_t(line[i]))) ++i;
        if (i >= line.size()) break;
        size_t start = i;
        while (i < line.size() && !std::isspace(uint8_t(line[i]))) ++i;
        tokens.emplace_back(line.substr(start, i - start), int(start + 1));
    }
    return tokens;
}

long expect_int(const std::pair<std::string, int>& token, int line) {
    try {
        size_t used = 0;
        long v = std::stol(token.first, &used);
        if (used != token.first.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(line, token.second, "expected an integer, got '" + token.first + "'");
    }
}

}  // namespace

Graph parse_graph_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Graph g;
    bool have_header = false;
    long declared_edges = 0;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0].first == "c") continue;
        if (tokens[0].first == "p") {
            if (tokens.size() != 4 || tokens[1].first != "edge")
                throw ParseError(line_no, tokens[0].second, "expected 'p edge <n> <m>'");
            g.n = int(expect_int(tokens[2], line_no));
            declared_edges = expect_int(tokens[3], line_no);
            have_header = true;
        } else if (tokens[0].first == "e") {
            if (!have_header) throw ParseError(line_no, tokens[0].second, "edge before 'p edge' header");
            if (tokens.size() != 3)
                throw ParseError(line_no, tokens[0].second, "expected 'e <u> <v>'");
            long u = expect_int(tokens[1], line_no);
            long v = expect_int(tokens[2], line_no);
            if (u < 1 || v < 1 || u > g.n || v > g.n)
                throw ParseError(line_no, tokens[1].second, "vertex index out of range");
            if (u == v) throw ParseError(line_no, tokens[1].second, "self-loop");
            g.edges.emplace_back(int(u - 1), int(v - 1));
        } else {
            throw ParseError(line_no, tokens[0].second, "unrecognized line '" + tokens[0].first + "'");
        }
    }
    if (!have_header) throw ParseError(line_no, 1, "missing 'p edge' header");
    if (declared_edges != long(g.edges.size()))
        throw ParseError(line_no, 1, "edge count mismatch with header");
    return g;
}

Graph load_graph_dimacs(const std::string& path) { return parse_graph_dimacs(read_file(path)); }

CnfFormula parse_cnf_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CnfFormula f;
    bool have_header = false;
    long declared_clauses = 0;
    int line_no = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0].first == "c") continue;
        if (tokens[0].first == "p") {
            if (tokens.size() != 4 || tokens[1].first != "cnf")
                throw ParseError(line_no, tokens[0].second, "expected 'p cnf <vars> <clauses>'");
            f.num_vars = int(expect_int(tokens[2], line_no));
            declared_clauses = expect_int(tokens[3], line_no);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError(line_no, tokens[0].second, "clause before 'p cnf' header");
        for (const auto& token : tokens) {
            long lit = expect_int(token, line_no);
            if (lit == 0) {
                if (current.empty()) throw ParseError(line_no, token.second, "empty clause");
                f.clauses.push_back(current);
                current.clear();
            } else {
                if (std::abs(lit) > f.num_vars)
                    throw ParseError(line_no, token.second, "literal out of range");
                current.push_back(int(lit));
            }
        }
    }
    if (!have_header) throw ParseError(line_no, 1, "missing 'p cnf' header");
    if (!current.empty()) throw ParseError(line_no, 1, "clause not terminated with 0");
    if (declared_clauses != long(f.clauses.size()))
        throw ParseError(line_no, 1, "clause count mismatch with header");
    return f;
}

CnfFormula load_cnf_dimacs(const std::string& path) { return parse_cnf_dimacs(read_file(path)); }

TilingInstance parse_tiling(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    TilingInstance t;
    int line_no = 0;
    bool have_header = false;
    long declared_tiles = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = tokenize(line);
        if (tokens.empty() || tokens[0].first == "#") continue;
        if (!have_header) {
            if (tokens.size() != 6 || tokens[0].first != "n" || tokens[2].first != "tiles" ||
                tokens[4].first != "colors")
                throw ParseError(line_no, tokens[0].second,
                                 "expected header 'n <side> tiles <count> colors <count>'");
            t.n = int(expect_int(tokens[1], line_no));
            declared_tiles = expect_int(tokens[3], line_no);
            t.num_colors = int(expect_int(tokens[5], line_no));
            have_header = true;
            continue;
        }
        if (tokens[0].first == "border") {
            if (tokens.size() != 2) throw ParseError(line_no, tokens[0].second, "expected 'border <color>'");
            t.border_color = int(expect_int(tokens[1], line_no));
            continue;
        }
        if (tokens[0].first == "pin") {
            if (tokens.size() != 4)
                throw ParseError(line_no, tokens[0].second, "expected 'pin <row> <col> <tile>'");
            t.pinned.emplace_back(int(expect_int(tokens[1], line_no)),
                                  int(expect_int(tokens[2], line_no)),
                                  int(expect_int(tokens[3], line_no)));
            continue;
        }
        if (tokens.size() != 4)
            throw ParseError(line_no, tokens[0].second, "expected four tile colors per line");
        Tile tile;
        tile.north = int(expect_int(tokens[0], line_no));
        tile.east = int(expect_int(tokens[1], line_no));
        tile.south = int(expect_int(tokens[2], line_no));
        tile.west = int(expect_int(tokens[3], line_no));
        t.tiles.push_back(tile);
    }
    if (!have_header) throw ParseError(line_no, 1, "missing tiling header");
    if (declared_tiles != long(t.tiles.size()))
        throw ParseError(line_no, 1, "tile count mismatch with header");
    try {
        validate(t);
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, 1, e.what());
    }
    return t;
}

TilingInstance load_tiling(const std::string& path) { return parse_tiling(read_file(path)); }

std::string format_tiling(const TilingInstance& t) {
    std::ostringstream out;
    out << "n " << t.n << " tiles " << t.tiles.size() << " colors " << t.num_colors << "\n";
    for (const Tile& tile : t.tiles)
        out << tile.north << " " << tile.east << " " << tile.south << " " << tile.west << "\n";
    out << "border " << t.border_color << "\n";
    for (const auto& [r, c, idx] : t.pinned) out << "pin " << r << " " << c << " " << idx << "\n";
    return out.str();
}

}  // namespace kts

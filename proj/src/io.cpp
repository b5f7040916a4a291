#include "leafpower/io.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace leafpower {

namespace {

std::string position(int line, int column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out;
}

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// Splits into lines, drops comments and blank lines, tokenises on whitespace.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        auto line = text.substr(start, end - start);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::istringstream in{std::string(line)};
        Line parsed{number, {}};
        for (std::string tok; in >> tok;) parsed.tokens.push_back(tok);
        if (!parsed.tokens.empty()) out.push_back(std::move(parsed));
        start = end + 1;
    }
    return out;
}

void add_graph_line(Graph& g, const Line& line) {
    const auto& tok = line.tokens;
    if (tok[0] == "node") {
        if (tok.size() != 2) throw ParseError(line.number, 0, "expected 'node LABEL'");
        g.add_vertex(tok[1]);
        return;
    }
    if (tok.size() != 2) throw ParseError(line.number, 0, "expected an edge 'U V'");
    if (tok[0] == tok[1]) throw ParseError(line.number, 0, "self-loop on '" + tok[0] + "'");
    if (!g.add_edge(tok[0], tok[1])) throw ParseError(line.number, 0, "duplicate edge " + tok[0] + " " + tok[1]);
}

// Recursive-descent Newick reader over a single string (comments removed).
class NewickReader {
public:
    NewickReader(std::string text, int line) : text_(std::move(text)), line_(line) {}

    void read(PhyloTree& tree, std::vector<std::optional<std::int64_t>>& weights) {
        tree_ = &tree;
        weights_ = &weights;
        skip_space();
        const auto root = tree_->add_node();
        subtree(root);
        if (peek() == ':') fail("the root cannot carry a weight");
        expect(';');
        skip_space();
        if (pos_ != text_.size()) fail("trailing text after ';'");
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_, static_cast<int>(pos_) + 1, message);
    }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    std::string name() {
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && std::string_view("(),:;").find(text_[pos_]) == std::string_view::npos &&
               !std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }
    std::optional<std::int64_t> weight() {
        if (peek() != ':') return std::nullopt;
        ++pos_;
        skip_space();
        const auto start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-'))
            ++pos_;
        std::int64_t value = 0;
        const auto* first = text_.data() + start;
        const auto* last = text_.data() + pos_;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (start == pos_ || ec != std::errc() || ptr != last) {
            pos_ = start;
            fail("malformed weight");
        }
        if (value < 0) {
            pos_ = start;
            fail("weights must be nonnegative");
        }
        return value;
    }
    // Children (if any) then the node's own name.
    void subtree(PhyloTree::Node node) {
        if (peek() == '(') {
            ++pos_;
            for (;;) {
                const auto child = tree_->add_node();
                subtree(child);
                tree_->add_edge(node, child);
                weights_->push_back(weight());
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                expect(')');
                break;
            }
        }
        const auto label = name();
        if (!label.empty()) {
            try {
                tree_->set_label(node, label);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
        } else if (tree_->degree(node) == 0) {
            fail("leaf without a name");
        }
    }

    std::string text_;
    int line_;
    std::size_t pos_ = 0;
    PhyloTree* tree_ = nullptr;
    std::vector<std::optional<std::int64_t>>* weights_ = nullptr;
};

struct NewickInput {
    PhyloTree tree;
    std::vector<std::optional<std::int64_t>> weights;
    std::optional<std::int64_t> threshold;
};

NewickInput read_newick_file(std::string_view text, bool allow_threshold) {
    NewickInput in;
    std::string newick;
    int newick_line = 0;
    int number = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string line(text.substr(start, end - start));
        start = end + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream probe(line);
        std::string first;
        if (!(probe >> first)) continue;
        if (first == "threshold:") {
            if (!allow_threshold) throw ParseError(number, 0, "unexpected threshold line");
            if (in.threshold) throw ParseError(number, 0, "duplicate threshold line");
            std::string value, extra;
            probe >> value;
            std::int64_t k = 0;
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
            if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || k < 0 || (probe >> extra))
                throw ParseError(number, 0, "malformed threshold");
            in.threshold = k;
            continue;
        }
        if (newick_line == 0) newick_line = number;
        newick += line;
        newick += ' ';
    }
    if (newick_line == 0) throw ParseError(number, 0, "no tree found");
    NewickReader(newick, newick_line).read(in.tree, in.weights);
    try {
        in.tree.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(newick_line, 0, e.what());
    }
    return in;
}

void write_subtree(const PhyloTree& t, const std::vector<std::int64_t>* weights, PhyloTree::Node node,
                   PhyloTree::EdgeId from, std::ostringstream& out) {
    std::vector<PhyloTree::EdgeId> children;
    for (auto e : t.incident(node))
        if (e != from) children.push_back(e);
    if (!children.empty()) {
        out << '(';
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (i) out << ',';
            write_subtree(t, weights, t.other_end(children[i], node), children[i], out);
            if (weights) out << ':' << (*weights)[static_cast<std::size_t>(children[i])];
        }
        out << ')';
    }
    if (t.is_labelled(node)) out << t.label(node);
}

std::string newick(const PhyloTree& t, const std::vector<std::int64_t>* weights) {
    if (t.node_count() == 0) return ";";
    PhyloTree::Node root = 0;
    for (PhyloTree::Node v = 0; v < static_cast<PhyloTree::Node>(t.node_count()); ++v)
        if (!t.is_labelled(v)) {
            root = v;
            break;
        }
    std::ostringstream out;
    write_subtree(t, weights, root, -1, out);
    out << ';';
    return out.str();
}

} // namespace

ParseError::ParseError(int line, int column, const std::string& message)
    : std::runtime_error(position(line, column) + ": " + message), line_(line), column_(column) {}

Graph parse_graph(std::string_view text) {
    Graph g;
    for (const auto& line : tokenize(text)) add_graph_line(g, line);
    return g;
}

std::string write_graph(const Graph& g) {
    std::ostringstream out;
    for (const auto& v : g.labels()) out << "node " << v << '\n';
    for (const auto& [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
    return out.str();
}

WeightedTree parse_tree(std::string_view text) {
    auto in = read_newick_file(text, true);
    if (!in.threshold) throw ParseError(0, 0, "missing 'threshold: k' line");
    WeightedTree wt;
    wt.tree = std::move(in.tree);
    wt.threshold = *in.threshold;
    for (std::size_t e = 0; e < in.weights.size(); ++e) {
        if (!in.weights[e]) throw ParseError(0, 0, "edge " + std::to_string(e) + " has no weight");
        wt.weights.push_back(*in.weights[e]);
    }
    return wt;
}

std::string write_tree(const WeightedTree& wt) {
    return newick(wt.tree, &wt.weights) + "\nthreshold: " + std::to_string(wt.threshold) + "\n";
}

PhyloTree parse_topology(std::string_view text) { return read_newick_file(text, false).tree; }

std::string write_topology(const PhyloTree& t) { return newick(t, nullptr); }

QuartetSet parse_quartets(std::string_view text) {
    QuartetSet out;
    for (const auto& line : tokenize(text)) {
        const auto& tok = line.tokens;
        if (tok.size() != 5 || tok[2] != "|") throw ParseError(line.number, 0, "expected 'a b | c d'");
        try {
            out.insert(Quartet::make(tok[0], tok[1], tok[3], tok[4]));
        } catch (const std::invalid_argument& e) {
            throw ParseError(line.number, 0, e.what());
        }
    }
    return out;
}

std::string write_quartets(const QuartetSet& q) {
    std::ostringstream out;
    for (const auto& x : q) out << x.a << ' ' << x.b << " | " << x.c << ' ' << x.d << '\n';
    return out.str();
}

RccInstance parse_rcc(std::string_view text) {
    RccInstance inst;
    bool have_terminals = false;
    for (const auto& line : tokenize(text)) {
        const auto& tok = line.tokens;
        if (tok[0] == "terminals") {
            if (tok.size() != 3) throw ParseError(line.number, 0, "expected 'terminals S T'");
            if (have_terminals) throw ParseError(line.number, 0, "duplicate terminals line");
            inst.s = tok[1];
            inst.t = tok[2];
            have_terminals = true;
        } else if (tok[0] == "part-u") {
            inst.part_u.insert(tok.begin() + 1, tok.end());
        } else {
            add_graph_line(inst.graph, line);
        }
    }
    if (!have_terminals) throw ParseError(0, 0, "missing 'terminals S T' line");
    try {
        return validate_rcc(std::move(inst));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, 0, e.what());
    }
}

std::string write_rcc(const RccInstance& inst) {
    std::ostringstream out;
    out << "terminals " << inst.s << ' ' << inst.t << '\n';
    if (!inst.part_u.empty()) {
        out << "part-u";
        for (const auto& u : inst.part_u) out << ' ' << u;
        out << '\n';
    }
    out << write_graph(inst.graph);
    return out.str();
}

} // namespace leafpower

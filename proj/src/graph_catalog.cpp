#include "adjsim/graph_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "json.hpp"

namespace adjsim {

namespace {

enum class Arrow { right, left, dash };

struct Node {
    char name;
    bool negative;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    Node node() {
        bool negative = false;
        if (peek() == 'n') {
            negative = true;
            ++pos_;
        }
        const char c = peek();
        if (c != 'X' && c != 'W' && c != 'Y') fail("expected X, W or Y");
        ++pos_;
        return {c, negative};
    }

    Arrow arrow() {
        if (text_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return Arrow::right;
        }
        if (text_.substr(pos_, 2) == "<-") {
            pos_ += 2;
            return Arrow::left;
        }
        if (peek() == '-') {
            ++pos_;
            return Arrow::dash;
        }
        fail("expected '->', '<-' or '-'");
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool done() const { return pos_ == text_.size(); }

    [[noreturn]] void fail(const std::string& what) const {
        throw GraphSyntaxError("malformed graph notation '" + std::string(text_) + "' at position " +
                               std::to_string(pos_) + ": " + what);
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Edge between (first, second) written as `first <arrow> second`.
EdgeSpec edge_from_arrow(Arrow a) {
    switch (a) {
        case Arrow::right: return EdgeSpec::forward();
        case Arrow::left: return EdgeSpec::backward();
        case Arrow::dash: return EdgeSpec::none();
    }
    return EdgeSpec::none();
}

EdgeSpec reversed(EdgeSpec e) {
    if (e.orientation == Orientation::toward_first) e.orientation = Orientation::toward_second;
    else if (e.orientation == Orientation::toward_second) e.orientation = Orientation::toward_first;
    return e;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Directed adjacency: adj[from][to].
using Adjacency = std::array<std::array<double, kNumVars>, kNumVars>;

Adjacency adjacency(const CausalGraph& g) {
    Adjacency a{};
    auto put = [&](const EdgeSpec& e, Var first, Var second) {
        const double c = edge_coefficient(e);
        const int f = static_cast<int>(first), s = static_cast<int>(second);
        if (e.orientation == Orientation::toward_second) a[f][s] = c;
        if (e.orientation == Orientation::toward_first) a[s][f] = c;
    };
    put(g.wx, Var::W, Var::X);
    put(g.wy, Var::W, Var::Y);
    put(g.xy, Var::X, Var::Y);
    return a;
}

std::vector<CatalogEntry> build_catalog() {
    struct Row {
        const char* notation;
        WClass w_class;
        XYRelation xy;
    };
    using enum WClass;
    using enum XYRelation;
    // Figure order; within a figure x_causes_y, y_causes_x, none. The twisted
    // chain panels take the slot of the excluded cyclic combination.
    const Row rows[] = {
        {"X<-W->Y,X->Y", Confounding, x_causes_y},
        {"X<-W->Y,X<-Y", Confounding, y_causes_x},
        {"X<-W->Y,X-Y", Confounding, none},
        {"X<-nW->Y,X->Y", TwistedConfounding, x_causes_y},
        {"X<-nW->Y,X<-Y", TwistedConfounding, y_causes_x},
        {"X<-nW->Y,X-Y", TwistedConfounding, none},
        {"X->W<-Y,X->Y", Collider, x_causes_y},
        {"X->W<-Y,X<-Y", Collider, y_causes_x},
        {"X->W<-Y,X-Y", Collider, none},
        {"X->nW<-Y,X->Y", TwistedCollider, x_causes_y},
        {"X->nW<-Y,X<-Y", TwistedCollider, y_causes_x},
        {"X->nW<-Y,X-Y", TwistedCollider, none},
        {"X<-W-Y,X->Y", Instrumental, x_causes_y},
        {"X<-W-Y,X<-Y", Instrumental, y_causes_x},
        {"X<-W-Y,X-Y", Instrumental, none},
        {"X-W->Y,X->Y", WeakConfounding, x_causes_y},
        {"X-W->Y,X<-Y", WeakConfounding, y_causes_x},
        {"X-W->Y,X-Y", WeakConfounding, none},
        {"X->W-Y,X->Y", PostTreatment, x_causes_y},
        {"X->W-Y,X<-Y", PostTreatment, y_causes_x},
        {"X->W-Y,X-Y", PostTreatment, none},
        {"X-W<-Y,X->Y", PostResponse, x_causes_y},
        {"X-W<-Y,X<-Y", PostResponse, y_causes_x},
        {"X-W<-Y,X-Y", PostResponse, none},
        {"X-W-Y,X->Y", Irrelevant, x_causes_y},
        {"X-W-Y,X<-Y", Irrelevant, y_causes_x},
        {"X-W-Y,X-Y", Irrelevant, none},
        {"X->W->Y,X->Y", ForwardChain, x_causes_y},
        {"X->nW->Y,X->Y", TwistedForwardChain, x_causes_y},
        {"X->W->Y,X-Y", ForwardChain, none},
        {"X<-nW<-Y,X<-Y", TwistedBackwardChain, y_causes_x},
        {"X<-W<-Y,X<-Y", BackwardChain, y_causes_x},
        {"X<-W<-Y,X-Y", BackwardChain, none},
    };
    std::vector<CatalogEntry> out;
    int id = 1;
    for (const auto& r : rows) {
        const CausalGraph g = parse_graph(r.notation);
        out.push_back({id++, g, {r.w_class, r.xy}, format_graph(g)});
    }
    return out;
}

}  // namespace

CausalGraph canonical(CausalGraph g) {
    for (EdgeSpec* e : {&g.wx, &g.wy, &g.xy}) {
        if (!e->present()) e->sign = Sign::positive;
    }
    return g;
}

bool has_cycle(const CausalGraph& g) {
    const Adjacency a = adjacency(g);
    // With three nodes and at most one edge per pair, a cycle is X->W->Y->X or X->Y->W->X.
    auto arc = [&](Var f, Var t) { return a[static_cast<int>(f)][static_cast<int>(t)] != 0.0; };
    return (arc(Var::X, Var::W) && arc(Var::W, Var::Y) && arc(Var::Y, Var::X)) ||
           (arc(Var::X, Var::Y) && arc(Var::Y, Var::W) && arc(Var::W, Var::X));
}

void validate(const CausalGraph& g) {
    if (g.wy.present() && g.wy.sign == Sign::negative)
        throw GraphSignError("negative sign is only allowed on the W-X edge (found on W-Y)");
    if (g.xy.present() && g.xy.sign == Sign::negative)
        throw GraphSignError("X-Y effect must be positive");
    if (has_cycle(g)) throw GraphCycleError("graph " + format_graph(g) + " contains a directed cycle");
}

CausalGraph parse_graph(std::string_view notation) {
    const std::string_view text = trim(notation);
    Lexer lex(text);

    const Node a = lex.node();
    const Arrow a1 = lex.arrow();
    const Node b = lex.node();
    const Arrow a2 = lex.arrow();
    const Node c = lex.node();
    lex.expect(',');
    const Node d = lex.node();
    const Arrow a3 = lex.arrow();
    const Node e = lex.node();
    if (!lex.done()) lex.fail("trailing characters");

    if (a.name != 'X' || b.name != 'W' || c.name != 'Y') lex.fail("W-part must read X?W?Y");
    if (d.name != 'X' || e.name != 'Y') lex.fail("XY-part must read X?Y");
    if (a.negative || c.negative || d.negative || e.negative)
        throw GraphSignError("in '" + std::string(text) + "': negative sign is only allowed on W (the W-X edge)");

    CausalGraph g;
    // `X <arrow> W` describes the pair (X, W); the stored pair is (W, X).
    g.wx = reversed(edge_from_arrow(a1));
    g.wy = edge_from_arrow(a2);
    g.xy = edge_from_arrow(a3);
    if (b.negative) {
        if (!g.wx.present())
            throw GraphSignError("in '" + std::string(text) + "': negative sign on an absent W-X edge");
        g.wx.sign = Sign::negative;
    }
    validate(g);
    return g;
}

std::string format_graph(const CausalGraph& g) {
    auto arrow = [](const EdgeSpec& e, bool flip) -> const char* {
        switch (e.orientation) {
            case Orientation::toward_second: return flip ? "<-" : "->";
            case Orientation::toward_first: return flip ? "->" : "<-";
            case Orientation::absent: return "-";
        }
        return "-";
    };
    std::string s = "X";
    s += arrow(g.wx, true);
    if (g.wx.present() && g.wx.sign == Sign::negative) s += 'n';
    s += 'W';
    s += arrow(g.wy, false);
    s += "Y,X";
    s += arrow(g.xy, false);
    s += 'Y';
    return s;
}

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry& catalog_entry(int id) {
    const auto& c = catalog();
    if (id < 1 || id > static_cast<int>(c.size()))
        throw std::out_of_range("no catalog entry with id " + std::to_string(id));
    return c[static_cast<std::size_t>(id - 1)];
}

GraphClass classify(const CausalGraph& g) {
    const CausalGraph key = canonical(g);
    for (const auto& e : catalog()) {
        if (e.graph == key) return e.cls;
    }
    throw UnknownClassError("graph " + format_graph(key) + " is not in the catalog");
}

double edge_coefficient(const EdgeSpec& e) {
    if (!e.present()) return 0.0;
    return e.sign == Sign::negative ? -kEdgeCoefficient : kEdgeCoefficient;
}

double true_effect(const CausalGraph& g) {
    const Adjacency a = adjacency(g);
    const int x = static_cast<int>(Var::X), w = static_cast<int>(Var::W), y = static_cast<int>(Var::Y);
    return a[x][y] + a[x][w] * a[w][y];
}

std::string_view to_string(WClass c) {
    switch (c) {
        case WClass::Confounding: return "Confounding";
        case WClass::TwistedConfounding: return "TwistedConfounding";
        case WClass::Collider: return "Collider";
        case WClass::TwistedCollider: return "TwistedCollider";
        case WClass::Instrumental: return "Instrumental";
        case WClass::WeakConfounding: return "WeakConfounding";
        case WClass::PostTreatment: return "PostTreatment";
        case WClass::PostResponse: return "PostResponse";
        case WClass::Irrelevant: return "Irrelevant";
        case WClass::ForwardChain: return "ForwardChain";
        case WClass::TwistedForwardChain: return "TwistedForwardChain";
        case WClass::BackwardChain: return "BackwardChain";
        case WClass::TwistedBackwardChain: return "TwistedBackwardChain";
    }
    return "?";
}

std::string_view to_string(XYRelation r) {
    switch (r) {
        case XYRelation::x_causes_y: return "x_causes_y";
        case XYRelation::y_causes_x: return "y_causes_x";
        case XYRelation::none: return "none";
    }
    return "?";
}

WClass parse_w_class(std::string_view s) {
    for (int i = 0; i <= static_cast<int>(WClass::TwistedBackwardChain); ++i) {
        const auto c = static_cast<WClass>(i);
        if (to_string(c) == s) return c;
    }
    throw std::invalid_argument("unknown w_class '" + std::string(s) + "'");
}

XYRelation parse_xy_relation(std::string_view s) {
    for (auto r : {XYRelation::x_causes_y, XYRelation::y_causes_x, XYRelation::none}) {
        if (to_string(r) == s) return r;
    }
    throw std::invalid_argument("unknown xy_relation '" + std::string(s) + "'");
}

std::string_view w_class_caption(WClass c) {
    switch (c) {
        case WClass::Confounding: return "Confounding: X<-W->Y";
        case WClass::TwistedConfounding: return "Twisted Confounding: X<-nW->Y";
        case WClass::Collider: return "W as a collider: X->W<-Y";
        case WClass::TwistedCollider: return "W as a twisted collider: X->nW<-Y";
        case WClass::Instrumental: return "Instrumental W: X<-W-Y";
        case WClass::WeakConfounding: return "Weak Confounding: X-W->Y";
        case WClass::PostTreatment: return "W Post Treatment: X->W-Y";
        case WClass::PostResponse: return "W Post Response: X-W<-Y";
        case WClass::Irrelevant: return "W Irrelevant: X-W-Y";
        case WClass::ForwardChain: return "Forward Chain: X->W->Y";
        case WClass::TwistedForwardChain: return "Twisted Forward Chain: X->nW->Y";
        case WClass::BackwardChain: return "Backward Chain: X<-W<-Y";
        case WClass::TwistedBackwardChain: return "Twisted Backward Chain: X<-nW<-Y";
    }
    return "?";
}

int figure_of(WClass c) {
    switch (c) {
        case WClass::Confounding: return 1;
        case WClass::TwistedConfounding: return 2;
        case WClass::Collider: return 3;
        case WClass::TwistedCollider: return 4;
        case WClass::Instrumental: return 5;
        case WClass::WeakConfounding: return 6;
        case WClass::PostTreatment: return 7;
        case WClass::PostResponse: return 8;
        case WClass::Irrelevant: return 9;
        case WClass::ForwardChain:
        case WClass::TwistedForwardChain: return 10;
        case WClass::BackwardChain:
        case WClass::TwistedBackwardChain: return 11;
    }
    return 0;
}

std::string_view figure_caption(int figure) {
    switch (figure) {
        case 10: return "Forward Chain: X->W->Y; cycle excluded, replaced by twisted forward chain.";
        case 11: return "Backward Chain: X<-W<-Y; cycle excluded, replaced by twisted backward chain.";
        default: break;
    }
    if (figure < 1 || figure > kNumFigures)
        throw std::out_of_range("figure number must be in 1.." + std::to_string(kNumFigures));
    return w_class_caption(static_cast<WClass>(figure - 1));
}

std::string catalog_json(int indent) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : catalog()) {
        arr.push_back({{"id", e.id},
                       {"notation", e.notation},
                       {"w_class", to_string(e.cls.w_class)},
                       {"xy_relation", to_string(e.cls.xy_relation)},
                       {"true_effect", true_effect(e.graph)}});
    }
    return arr.dump(indent);
}

}  // namespace adjsim

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace adjsim {

/// Node indices used throughout: X = 0, W = 1, Y = 2.
enum class Var : int { X = 0, W = 1, Y = 2 };

inline constexpr int kNumVars = 3;

/// Orientation of the edge between an ordered pair (first, second).
/// `toward_second` means first -> second.
enum class Orientation { toward_first, toward_second, absent };

enum class Sign { positive, negative };

struct EdgeSpec {
    Orientation orientation = Orientation::absent;
    Sign sign = Sign::positive;

    static EdgeSpec none() { return {}; }
    static EdgeSpec forward(Sign s = Sign::positive) { return {Orientation::toward_second, s}; }
    static EdgeSpec backward(Sign s = Sign::positive) { return {Orientation::toward_first, s}; }

    bool present() const { return orientation != Orientation::absent; }
    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

/// Three-variable signed graph. Pairs are ordered (W, X), (W, Y) and (X, Y):
/// wx.toward_second is W -> X, wy.toward_second is W -> Y, xy.toward_second is X -> Y.
struct CausalGraph {
    EdgeSpec wx;
    EdgeSpec wy;
    EdgeSpec xy;

    friend bool operator==(const CausalGraph&, const CausalGraph&) = default;
};

enum class WClass {
    Confounding,
    TwistedConfounding,
    Collider,
    TwistedCollider,
    Instrumental,
    WeakConfounding,
    PostTreatment,
    PostResponse,
    Irrelevant,
    ForwardChain,
    TwistedForwardChain,
    BackwardChain,
    TwistedBackwardChain,
};

enum class XYRelation { x_causes_y, y_causes_x, none };

struct GraphClass {
    WClass w_class;
    XYRelation xy_relation;

    friend bool operator==(const GraphClass&, const GraphClass&) = default;
};

struct CatalogEntry {
    int id;
    CausalGraph graph;
    GraphClass cls;
    std::string notation;
};

class GraphSyntaxError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GraphCycleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class GraphSignError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class UnknownClassError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Magnitude of every structural coefficient.
inline const double kEdgeCoefficient = 1.0 / std::sqrt(3.0);

/// Canonicalizes absent-edge signs to positive.
CausalGraph canonical(CausalGraph g);

/// Throws GraphCycleError / GraphSignError if `g` breaks a CausalGraph invariant.
void validate(const CausalGraph& g);
bool has_cycle(const CausalGraph& g);

/// Parses `<W-part>,<XY-part>`, e.g. "X<-nW->Y,X->Y". A lower-case `n` in
/// front of W marks the W-X effect as negative; `n` anywhere else is a sign
/// error. Surrounding whitespace is ignored.
CausalGraph parse_graph(std::string_view notation);
std::string format_graph(const CausalGraph& g);

/// The 33 data-generating graphs, ids 1..33 in figure order.
const std::vector<CatalogEntry>& catalog();

/// Looks up an entry by id; throws std::out_of_range when absent.
const CatalogEntry& catalog_entry(int id);

/// Throws UnknownClassError for graphs outside the catalog.
GraphClass classify(const CausalGraph& g);

/// Signed coefficient on the edge, 0 when absent.
double edge_coefficient(const EdgeSpec& e);

/// Total effect of X on Y: sum over directed X->Y paths of coefficient products.
double true_effect(const CausalGraph& g);

std::string_view to_string(WClass c);
std::string_view to_string(XYRelation r);
WClass parse_w_class(std::string_view s);
XYRelation parse_xy_relation(std::string_view s);

/// Caption for a W class, e.g. "Confounding: X<-W->Y".
std::string_view w_class_caption(WClass c);

/// Figure number (1..11) a class is displayed in; twisted chains share the
/// figure of their untwisted chain.
int figure_of(WClass c);
inline constexpr int kNumFigures = 11;

/// Full caption of figure 1..11.
std::string_view figure_caption(int figure);

/// Catalog as a JSON array of {id, notation, w_class, xy_relation, true_effect}.
std::string catalog_json(int indent = 2);

}  // namespace adjsim

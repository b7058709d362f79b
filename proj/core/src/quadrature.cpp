#include "miura/quadrature.hpp"

#include "miura/error.hpp"

#include <string>

namespace miura {

namespace {

// Dunavant's symmetric rules, refined to full double precision by Newton
// iteration on the moment equations. Weights are for area 1/2.
class RuleBuilder {
public:
    explicit RuleBuilder(int degree) { rule_.exactness_degree = degree; }

    RuleBuilder& centroid(double w)
    {
        add(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, w);
        return *this;
    }

    // (a, a, 1-2a) and rotations
    RuleBuilder& orbit3(double a, double w)
    {
        const double c = 1.0 - 2.0 * a;
        add(a, a, c, w);
        add(a, c, a, w);
        add(c, a, a, w);
        return *this;
    }

    // all permutations of (a, b, 1-a-b)
    RuleBuilder& orbit6(double a, double b, double w)
    {
        const double c = 1.0 - a - b;
        add(a, b, c, w);
        add(b, a, c, w);
        add(a, c, b, w);
        add(c, a, b, w);
        add(b, c, a, w);
        add(c, b, a, w);
        return *this;
    }

    TriangleRule build() { return std::move(rule_); }

private:
    void add(double l0, double l1, double l2, double w)
    {
        rule_.points.push_back({l0, l1, l2});
        rule_.weights.push_back(w);
    }

    TriangleRule rule_;
};

TriangleRule tabulated(int degree)
{
    switch (degree) {
    case 1:
        return RuleBuilder(1).centroid(0.5).build();
    case 2:
        return RuleBuilder(2).orbit3(1.0 / 6.0, 1.0 / 6.0).build();
    case 4:
        return RuleBuilder(4)
            .orbit3(0.44594849091596488632, 0.11169079483900573285)
            .orbit3(0.09157621350977074346, 0.054975871827660933819)
            .build();
    case 5:
        return RuleBuilder(5)
            .centroid(0.1125)
            .orbit3(0.47014206410511508977, 0.066197076394253090369)
            .orbit3(0.1012865073234563388, 0.062969590272413576298)
            .build();
    case 6:
        return RuleBuilder(6)
            .orbit3(0.24928674517091042129, 0.058393137863189683013)
            .orbit3(0.06308901449150222834, 0.02542245318510340846)
            .orbit6(0.31035245103378440542, 0.63650249912139864723, 0.041425537809186787597)
            .build();
    case 8:
        return RuleBuilder(8)
            .centroid(0.072157803838893584126)
            .orbit3(0.45929258829272315603, 0.047545817133642312397)
            .orbit3(0.17056930775176020662, 0.051608685267359125141)
            .orbit3(0.050547228317030975458, 0.016229248811599040155)
            .orbit6(0.26311282963463811342, 0.72849239295540428124, 0.013615157087217497132)
            .build();
    case 9:
        return RuleBuilder(9)
            .centroid(0.04856789814139941691)
            .orbit3(0.48968251919873762778, 0.015667350113569535268)
            .orbit3(0.43708959149293663727, 0.038913770502387139658)
            .orbit3(0.18820353561903273024, 0.039823869463605126516)
            .orbit3(0.044729513394452709865, 0.012788837829349015631)
            .orbit6(0.22196298916076569568, 0.74119859878449802069, 0.021641769688644688645)
            .build();
    case 10:
        return RuleBuilder(10)
            .centroid(0.045408995191376790048)
            .orbit3(0.48557763338365737737, 0.018362978878233352359)
            .orbit3(0.1094815754850370548, 0.022660529717763967391)
            .orbit6(0.14170721941487995476, 0.30793983876412095017, 0.036378958422710054302)
            .orbit6(0.025003534762686386074, 0.24667256063990269392, 0.014163621265528742418)
            .orbit6(0.0095408154002994575802, 0.066803251012200265774, 0.00471083348186641173)
            .build();
    case 12:
        return RuleBuilder(12)
            .orbit3(0.48821738977380488256, 0.012865533220227667709)
            .orbit3(0.43972439229446027298, 0.021846272269019201068)
            .orbit3(0.27121038501211592235, 0.031429112108942550177)
            .orbit3(0.12757614554158592467, 0.017398056465354471495)
            .orbit3(0.021317350453210370247, 0.0030831305257795086169)
            .orbit6(0.11534349453469799917, 0.27571326968551419397, 0.020185778883190464759)
            .orbit6(0.02283833222225702961, 0.28132558098993954825, 0.011178386601151722856)
            .orbit6(0.025734050548330228168, 0.11625191590759714124, 0.0086581155543294461858)
            .build();
    default:
        throw InvalidArgument("no tabulated triangle rule of degree " + std::to_string(degree));
    }
}

struct GaussTable {
    int n;
    std::array<std::array<double, 2>, 7> nodes; // (point, weight) on [0, 1]
};

constexpr GaussTable kGauss[] = {
    {1, {{{0.5, 1.0}}}},
    {2, {{{0.21132486540518711775, 0.5}, {0.78867513459481288225, 0.5}}}},
    {3,
     {{{0.11270166537925831148, 0.27777777777777777778},
       {0.5, 0.44444444444444444444},
       {0.88729833462074168852, 0.27777777777777777778}}}},
    {4,
     {{{0.069431844202973712388, 0.17392742256872692869},
       {0.3300094782075718676, 0.32607257743127307131},
       {0.6699905217924281324, 0.32607257743127307131},
       {0.93056815579702628761, 0.17392742256872692869}}}},
    {5,
     {{{0.046910077030668003601, 0.11846344252809454376},
       {0.23076534494715845448, 0.23931433524968323402},
       {0.5, 0.28444444444444444444},
       {0.76923465505284154552, 0.23931433524968323402},
       {0.9530899229693319964, 0.11846344252809454376}}}},
    {6,
     {{{0.033765242898423986094, 0.085662246189585172520},
       {0.16939530676686774317, 0.18038078652406930378},
       {0.38069040695840154568, 0.23395696728634552369},
       {0.61930959304159845432, 0.23395696728634552369},
       {0.83060469323313225683, 0.18038078652406930378},
       {0.96623475710157601391, 0.085662246189585172520}}}},
    {7,
     {{{0.025446043828620737737, 0.064742483084434846635},
       {0.12923440720030278007, 0.13985269574463833395},
       {0.29707742431130141655, 0.19091502525255947248},
       {0.5, 0.20897959183673469388},
       {0.70292257568869858345, 0.19091502525255947248},
       {0.87076559279969721993, 0.13985269574463833395},
       {0.97455395617137926226, 0.064742483084434846635}}}},
};

} // namespace

TriangleRule triangle_rule(int degree)
{
    if (degree < 1 || degree > 12) {
        throw InvalidArgument("triangle_rule: degree must be in [1, 12], got " + std::to_string(degree));
    }
    switch (degree) {
    case 3: return tabulated(4);
    case 7: return tabulated(8);
    case 11: return tabulated(12);
    default: return tabulated(degree);
    }
}

EdgeRule edge_rule(int degree)
{
    if (degree < 1 || degree > 12) {
        throw InvalidArgument("edge_rule: degree must be in [1, 12], got " + std::to_string(degree));
    }
    const int n = degree / 2 + 1;
    const GaussTable& g = kGauss[n - 1];
    EdgeRule rule;
    rule.exactness_degree = 2 * n - 1;
    for (int i = 0; i < g.n; ++i) {
        rule.points.push_back(g.nodes[static_cast<std::size_t>(i)][0]);
        rule.weights.push_back(g.nodes[static_cast<std::size_t>(i)][1]);
    }
    return rule;
}

} // namespace miura

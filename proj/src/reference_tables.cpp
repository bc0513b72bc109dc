#include "qrws/reference_tables.hpp"

namespace qrws {

const std::vector<HillRef>& hill_fit_references() {
    static const std::vector<HillRef> rows{
        {4, 127, 0.377871, 0.61954, 3.26522, 0.00840781},
        {4, 233, 0.391042, 5.52073, 3.22841, 0.000522782},
        {6, 127, 0.393237, 0.351782, 3.67782, 0.0136556},
        {6, 233, 0.411837, 4.04468, 1.80806, 0.00100045},
        {8, 127, 0.421285, 0.158438, 3.3686, 0.0181447},
        {8, 233, 0.438595, 2.64616, 1.40927, 0.00154029},
    };
    return rows;
}

const std::vector<TrendRef>& trend_references_single() {
    // The best-case reference fit drops m = 4: k(4) sits far above the
    // exponential through the remaining coin sizes.
    static const std::vector<TrendRef> rows{
        {SequenceKind::PM, true, 16.3564, 0.123172, -3.52146, 0.22472, 4, 9, {4}},
        {SequenceKind::PM, false, 1.93362, 0.246102, -0.105428, 0.0121064, 4, 9, {}},
    };
    return rows;
}

const std::vector<TrendRef>& trend_references_alternating() {
    static const std::vector<TrendRef> rows{
        {SequenceKind::A1, true, 6.93968, 0.382892, 0.512436, 0.0557685, 4, 9, {}},
        {SequenceKind::A1, false, 1.30841, 0.174113, -0.188854, 0.0089503, 4, 9, {}},
        {SequenceKind::A2, true, 22.1818, 0.858386, 1.50822, 0.0232775, 4, 9, {}},
        {SequenceKind::A2, false, 3.09085, 0.168702, -0.475159, 0.02708, 4, 9, {}},
        {SequenceKind::A3, true, 18.3219, 0.763294, 1.54483, 0.12208, 4, 9, {}},
        {SequenceKind::A3, false, 3.18826, 0.168853, 0.0108582, 0.0341235, 4, 9, {}},
    };
    return rows;
}

const std::vector<TrendRef>& trend_references_halves() {
    static const std::vector<TrendRef> rows{
        {SequenceKind::H1, true, 4.59679, 0.177573, -0.295823, 0.116051, 4, 9, {}},
        {SequenceKind::H1, false, 1.7612, 0.264969, -0.0702085, 0.0114705, 4, 9, {}},
        {SequenceKind::H2, true, 17.0124, 0.548523, 0.22363, 0.0573324, 4, 9, {}},
        {SequenceKind::H2, false, 6.60375, 0.364563, 0.0686182, 0.0394462, 4, 9, {}},
        {SequenceKind::H3, true, 190.244, 19.1032, 2.63443, 0.725247, 4, 9, {}},
        {SequenceKind::H3, false, 4.09298, 0.288725, 0.0706958, 0.0101359, 4, 9, {}},
    };
    return rows;
}

std::vector<TrendRef> all_trend_references() {
    std::vector<TrendRef> all = trend_references_single();
    const auto& alt = trend_references_alternating();
    const auto& halves = trend_references_halves();
    all.insert(all.end(), alt.begin(), alt.end());
    all.insert(all.end(), halves.begin(), halves.end());
    return all;
}

}  // namespace qrws

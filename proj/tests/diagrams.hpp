#pragma once

#include "venn/core.hpp"

namespace venn::testdata {

inline const CrossingSequence kM4Alpha{3, 2, 3, 4};
inline const CrossingSequence kHamiltonAlpha{3, 2, 4, 3};

inline const CrossingSequence kM4Sigma{1, 3, 2, 5, 4, 3, 2, 3, 4,
                                       6, 5, 4, 3, 2, 5, 4, 3, 4};

// The 11-curve diagram's free half.
inline const CrossingSequence kNewrozAlpha{
    3, 2, 3, 4, 3, 4, 5, 4, 3, 2, 3, 4, 3, 4, 5, 4, 3, 4, 5, 4, 5,
    6, 5, 4, 5, 6, 5, 6, 7, 6, 5, 4, 3, 2, 5, 4, 3, 4, 6, 5, 4, 5,
    6, 7, 6, 7, 8, 7, 6, 5, 6, 5, 4, 3, 4, 5, 7, 6, 5, 4, 6, 5, 8,
    7, 6, 5, 4, 5, 7, 6, 5, 6, 8, 7, 6, 5, 4, 6, 5, 7, 6, 5, 6, 7};

// All 12 arrangements of the multiset {2, 3, 3, 4}.
inline const std::vector<CrossingSequence> kSevenCurveCandidates{
    {2, 3, 3, 4}, {2, 3, 4, 3}, {2, 4, 3, 3}, {3, 2, 3, 4},
    {3, 2, 4, 3}, {3, 3, 2, 4}, {3, 3, 4, 2}, {3, 4, 2, 3},
    {3, 4, 3, 2}, {4, 2, 3, 3}, {4, 3, 2, 3}, {4, 3, 3, 2}};

}  // namespace venn::testdata

// SPDX-License-Identifier: Apache-2.0
//
// Static separator recipes for every valid cell configuration.
//
// Corner masks: bit 0 = a, bit 1 = b, bit 2 = c, bit 3 = d. Two set bits
// select an edge midpoint, three a face barycenter, four the cell
// barycenter. Mask shorthands used below:
//   ab=3 ac=5 ad=9 bc=6 bd=10 cd=12  abc=7 abd=11 acd=13 bcd=14  abcd=15
//
// Three-label tetrahedra use one canonical tiling: the two mixed-face
// barycenters are joined by an interior edge shared by all three walls
// (quad + quad + single triangle). Mirror tilings would be equally valid;
// cross-cell consistency only depends on the face-restricted splits, which
// every tiling shares.

#include "plmss/marching.hpp"

namespace plmss::tables {

namespace {

struct CaseRange {
  std::uint8_t offset;
  std::uint8_t count;
};

constexpr SeparatorSeg kTriangleData[] = {
    // code 2: c differs from a == b
    {{5, 6}, 0, 2},
    // code 4: b differs from a == c
    {{3, 6}, 0, 1},
    // code 5: a differs from b == c
    {{3, 5}, 0, 1},
    // code 6: three labels, fan from the barycenter to each edge midpoint
    {{7, 3}, 0, 1},
    {{7, 6}, 1, 2},
    {{7, 5}, 0, 2},
};

constexpr CaseRange kTriangleCases[8] = {
    /*0*/ {0, 0}, /*1*/ {0, 0}, /*2*/ {0, 1}, /*3*/ {0, 0},
    /*4*/ {1, 1}, /*5*/ {2, 1}, /*6*/ {3, 3}, /*7*/ {0, 0},
};

constexpr bool kTriangleValid[8] = {true,  false, true,  false,
                                    true,  true,  true,  false};

constexpr SeparatorTri kTetraData[] = {
    // case 3: d is the lone label
    {{9, 10, 12}, 0, 3},
    // case 8: c lone
    {{5, 6, 12}, 0, 2},
    // case 16: b lone
    {{3, 6, 10}, 0, 1},
    // case 21: a lone
    {{3, 5, 9}, 0, 1},
    // case 10: {a,b} vs {c,d}, quad strip across the four crossing edges
    {{5, 9, 6}, 0, 2},
    {{9, 6, 10}, 0, 2},
    // case 17: {a,c} vs {b,d}
    {{3, 9, 6}, 0, 1},
    {{9, 6, 12}, 0, 1},
    // case 20: {a,d} vs {b,c}
    {{3, 5, 10}, 0, 1},
    {{5, 10, 12}, 0, 1},
    // case 11: pair {a,b}, singles c, d
    {{13, 14, 5}, 0, 2},
    {{14, 5, 6}, 0, 2},
    {{13, 14, 9}, 0, 3},
    {{14, 9, 10}, 0, 3},
    {{13, 14, 12}, 2, 3},
    // case 19: pair {a,c}, singles b, d
    {{11, 14, 3}, 0, 1},
    {{14, 3, 6}, 0, 1},
    {{11, 14, 9}, 0, 3},
    {{14, 9, 12}, 0, 3},
    {{11, 14, 10}, 1, 3},
    // case 23: pair {b,c}, singles a, d
    {{11, 13, 3}, 0, 1},
    {{13, 3, 5}, 0, 1},
    {{11, 13, 10}, 1, 3},
    {{13, 10, 12}, 1, 3},
    {{11, 13, 9}, 0, 3},
    // case 24: pair {a,d}, singles b, c
    {{7, 14, 3}, 0, 1},
    {{14, 3, 10}, 0, 1},
    {{7, 14, 5}, 0, 2},
    {{14, 5, 12}, 0, 2},
    {{7, 14, 6}, 1, 2},
    // case 25: pair {b,d}, singles a, c
    {{7, 13, 3}, 0, 1},
    {{13, 3, 9}, 0, 1},
    {{7, 13, 6}, 1, 2},
    {{13, 6, 12}, 1, 2},
    {{7, 13, 5}, 0, 2},
    // case 26: pair {c,d}, singles a, b
    {{7, 11, 5}, 0, 2},
    {{11, 5, 9}, 0, 2},
    {{7, 11, 6}, 1, 2},
    {{11, 6, 10}, 1, 2},
    {{7, 11, 3}, 0, 1},
    // case 27: four labels, fan from the cell barycenter through each face
    // barycenter to the face's edge midpoints
    {{15, 7, 3}, 0, 1},
    {{15, 7, 5}, 0, 2},
    {{15, 7, 6}, 1, 2},
    {{15, 11, 3}, 0, 1},
    {{15, 11, 9}, 0, 3},
    {{15, 11, 10}, 1, 3},
    {{15, 13, 5}, 0, 2},
    {{15, 13, 9}, 0, 3},
    {{15, 13, 12}, 2, 3},
    {{15, 14, 6}, 1, 2},
    {{15, 14, 10}, 1, 3},
    {{15, 14, 12}, 2, 3},
};

constexpr CaseRange kTetraCases[32] = {
    /* 0*/ {0, 0},  /* 1*/ {0, 0},  /* 2*/ {0, 0},  /* 3*/ {0, 1},
    /* 4*/ {0, 0},  /* 5*/ {0, 0},  /* 6*/ {0, 0},  /* 7*/ {0, 0},
    /* 8*/ {1, 1},  /* 9*/ {0, 0},  /*10*/ {4, 2},  /*11*/ {10, 5},
    /*12*/ {0, 0},  /*13*/ {0, 0},  /*14*/ {0, 0},  /*15*/ {0, 0},
    /*16*/ {2, 1},  /*17*/ {6, 2},  /*18*/ {0, 0},  /*19*/ {15, 5},
    /*20*/ {8, 2},  /*21*/ {3, 1},  /*22*/ {0, 0},  /*23*/ {20, 5},
    /*24*/ {25, 5}, /*25*/ {30, 5}, /*26*/ {35, 5}, /*27*/ {40, 12},
    /*28*/ {0, 0},  /*29*/ {0, 0},  /*30*/ {0, 0},  /*31*/ {0, 0},
};

constexpr bool tetra_valid_at(std::uint8_t code) {
  for (const std::uint8_t c : kValidTetraCodes)
    if (c == code) return true;
  return false;
}

}  // namespace

bool triangle_code_valid(std::uint8_t code) {
  return code < 8 && kTriangleValid[code];
}

bool tetra_code_valid(std::uint8_t code) {
  return code < 32 && tetra_valid_at(code);
}

std::span<const SeparatorSeg> triangle_case(std::uint8_t code) {
  if (code >= 8) return {};
  const CaseRange r = kTriangleCases[code];
  return {kTriangleData + r.offset, r.count};
}

std::span<const SeparatorTri> tetra_case(std::uint8_t code) {
  if (code >= 32) return {};
  const CaseRange r = kTetraCases[code];
  return {kTetraData + r.offset, r.count};
}

}  // namespace plmss::tables

// Copyright 2026 The sitepack Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference benchmark rows: raw areas and the published derived
// columns, used as ground truth for the metric arithmetic.
#ifndef SITEPACK_TESTS_REFERENCE_ROWS_HPP_
#define SITEPACK_TESTS_REFERENCE_ROWS_HPP_

#include <array>

namespace sitepack::testdata {

struct ReferenceRow {
  const char* id;
  int sites;
  int diversity;
  double solver_time_s;
  double chip;
  double track;
  double bbox;
  double chip_plus_track;
  double util_pct;
  double track_pct;
};

inline constexpr std::array<ReferenceRow, 25> kReferenceRows{{
    {"P1", 5, 1, 75.41, 50784, 470, 51985, 51254, 98.59, 0.90},
    {"P2", 10, 2, 112.68, 102306, 999, 109630, 103305, 94.23, 0.91},
    {"P3", 20, 3, 149.73, 119372, 1394, 143820, 120766, 83.97, 0.97},
    {"P4", 50, 4, 261.53, 298591, 2064, 348176, 300655, 86.35, 0.59},
    {"P5", 100, 5, 1008.95, 1922365, 1880, 2118591, 1924245, 90.83, 0.09},
    {"P6", 5, 1, 157.24, 93104, 1241, 105741, 94345, 89.22, 1.17},
    {"P7", 10, 2, 315.15, 221909, 2462, 256704, 224371, 87.40, 0.96},
    {"P8", 20, 3, 284.15, 221585, 2286, 258805, 223871, 86.50, 0.88},
    {"P9", 50, 4, 709.19, 614479, 4343, 690239, 618822, 89.65, 0.63},
    {"P10", 100, 5, 3576.93, 3836266, 9011, 4054695, 3845277, 94.84, 0.22},
    {"P11", 5, 1, 429.50, 177744, 2658, 201260, 180402, 89.64, 1.32},
    {"P12", 10, 2, 661.82, 255027, 3896, 306000, 258923, 84.62, 1.27},
    {"P13", 20, 3, 1012.55, 435030, 3594, 489168, 438624, 89.67, 0.73},
    {"P14", 50, 4, 1915.38, 1032580, 7262, 1168429.5, 1039842, 88.99, 0.62},
    {"P15", 100, 5, 11394.33, 6040294, 12602, 6731832, 6052896, 89.91, 0.19},
    {"P16", 5, 1, 1945.20, 431664, 6580, 523127.5, 438244, 83.77, 1.26},
    {"P17", 10, 2, 2867.13, 508947, 9290, 589432.5, 518237, 87.92, 1.58},
    {"P18", 20, 3, 4929.31, 1075365, 17196, 1269606.2, 1092561, 86.06, 1.35},
    {"P19", 50, 4, 8736.11, 1714770, 14783, 2056212, 1729553, 84.11, 0.72},
    {"P20", 100, 5, 48085.70, 8071690, 24762, 8622849, 8096452, 93.90, 0.29},
    {"P21", 5, 1, 11526.87, 854864, 19787, 1028180, 874651, 85.07, 1.92},
    {"P22", 10, 2, 11112.95, 932147, 21198, 1175134, 953345, 81.13, 1.80},
    {"P23", 20, 3, 23196.05, 2142590, 29476, 2505321, 2172066, 86.70, 1.18},
    {"P24", 50, 4, 44600.68, 2840268, 25092, 3770833.5, 2865360, 75.99, 0.67},
    {"P25", 100, 5, 202363.78, 11673554, 55269, 13367399.2, 11728823, 87.74, 0.41},
}};

}  // namespace sitepack::testdata

#endif  // SITEPACK_TESTS_REFERENCE_ROWS_HPP_

// include/spoofbench/det-plot.h

// Copyright 2026  The spoofbench Authors

// See ../../COPYING for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SPOOFBENCH_DET_PLOT_H_
#define SPOOFBENCH_DET_PLOT_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "spoofbench/metrics.h"

namespace spoofbench {

/// Writes DET curves as a standalone SVG with normal-deviate (probit) axes
/// from 0.1% to 50%.
void WriteDetSvg(std::ostream &out,
                 const std::vector<std::pair<std::string, DetCurve>> &curves);

/// "tau,p_miss,p_fa" rows, plus p_fa_nontarget,p_fa_spoof for SASV curves.
void WriteDetCsv(std::ostream &out, const DetCurve &curve);

}  // namespace spoofbench

#endif  // SPOOFBENCH_DET_PLOT_H_

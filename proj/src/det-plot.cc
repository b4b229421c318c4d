// src/det-plot.cc

// Copyright 2026  The spoofbench Authors

// See ../COPYING for clarification regarding multiple authors
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

#include "spoofbench/det-plot.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

namespace spoofbench {

namespace {

constexpr double kLo = 0.001;
constexpr double kHi = 0.5;
constexpr double kSize = 480.0;
constexpr double kMargin = 60.0;
const char *kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

double Probit(double p) {
  static const boost::math::normal_distribution<double> unit;
  return boost::math::quantile(unit, std::clamp(p, kLo, kHi));
}

double Scale(double p) {
  const double lo = Probit(kLo), hi = Probit(kHi);
  return (Probit(p) - lo) / (hi - lo) * kSize;
}

std::string EscapeXml(const std::string &s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

void WriteDetSvg(std::ostream &out,
                 const std::vector<std::pair<std::string, DetCurve>> &curves) {
  const double w = kSize + 2 * kMargin;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << w << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kSize
      << "\" height=\"" << kSize << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.4}) {
    const double pos = Scale(t);
    std::ostringstream label;
    label << t * 100;
    out << "<line x1=\"" << kMargin + pos << "\" y1=\"" << kMargin << "\" x2=\""
        << kMargin + pos << "\" y2=\"" << kMargin + kSize
        << "\" stroke=\"#ddd\"/>\n";
    out << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin + kSize - pos
        << "\" x2=\"" << kMargin + kSize << "\" y2=\"" << kMargin + kSize - pos
        << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << kMargin + pos << "\" y=\"" << kMargin + kSize + 15
        << "\" text-anchor=\"middle\">" << label.str() << "</text>\n";
    out << "<text x=\"" << kMargin - 5 << "\" y=\"" << kMargin + kSize - pos + 4
        << "\" text-anchor=\"end\">" << label.str() << "</text>\n";
  }
  out << "<text x=\"" << w / 2 << "\" y=\"" << w - 15
      << "\" text-anchor=\"middle\">False alarm rate (%)</text>\n";
  out << "<text x=\"15\" y=\"" << w / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 15 " << w / 2 << ")\">Miss rate (%)</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char *color = kColors[c % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto &pt : curves[c].second.points)
      out << kMargin + Scale(pt.p_fa) << "," << kMargin + kSize - Scale(pt.p_miss)
          << " ";
    out << "\"/>\n";
    out << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 15 + 14 * c
        << "\" fill=\"" << color << "\">" << EscapeXml(curves[c].first)
        << "</text>\n";
  }
  out << "</svg>\n";
}

void WriteDetCsv(std::ostream &out, const DetCurve &curve) {
  out << (curve.sasv ? "tau,p_miss,p_fa,p_fa_nontarget,p_fa_spoof\n"
                     : "tau,p_miss,p_fa\n");
  for (const auto &pt : curve.points) {
    out << FormatReal(pt.threshold) << ',' << FormatReal(pt.p_miss) << ','
        << FormatReal(pt.p_fa);
    if (curve.sasv)
      out << ',' << FormatReal(pt.p_fa_nontarget) << ',' << FormatReal(pt.p_fa_spoof);
    out << '\n';
  }
}

}  // namespace spoofbench

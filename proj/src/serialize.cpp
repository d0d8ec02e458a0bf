/*
 * Copyright 2026 The ttorus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ttorus/serialize.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ttorus {

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json kernel_json(const KernelDims& k) {
  return Json{{"ker", k.ker}, {"coker", k.coker}, {"index", k.index()}};
}

}  // namespace

Json to_json(const FourierSeries& f) {
  Json out = Json::array();
  for (const auto& [k, c] : f.coefficients())
    out.push_back(Json{{"k", k}, {"re", c.real()}, {"im", c.imag()}});
  return out;
}

FourierSeries fourier_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("fourier_from_json: expected an array");
  std::map<int, Complex> c;
  for (const auto& e : j) {
    c[e.at("k").get<int>()] += Complex(e.at("re").get<double>(), e.at("im").get<double>());
  }
  return FourierSeries(std::move(c));
}

Json to_json(const TruncatedOperator& a) {
  Json entries = Json::array();
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) {
      const Complex v = a(r, c);
      if (v != Complex{}) entries.push_back(Json::array({r, c, v.real(), v.imag()}));
    }
  Json band = nullptr;
  if (a.band()) band = Json::array({a.band()->lower, a.band()->upper});
  return Json{{"dim", a.dim()}, {"band", band}, {"entries", entries}};
}

std::string to_csv(const TruncatedOperator& a) {
  std::ostringstream os;
  for (int r = 0; r < a.dim(); ++r) {
    for (int c = 0; c < a.dim(); ++c) {
      const Complex v = a(r, c);
      char buf[80];
      std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
      os << (c ? "," : "") << buf;
    }
    os << '\n';
  }
  return os.str();
}

Json to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back(Json{{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance},
                          {"passed", c.passed}});
  Json metrics = Json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  Json pre = nullptr;
  if (r.precondition_violation) pre = *r.precondition_violation;
  return Json{{"name", r.name},       {"n", r.n},
              {"margin", r.margin},   {"passed", r.passed()},
              {"precondition_violation", pre},
              {"checks", checks},     {"metrics", metrics}};
}

Json to_json(const WedgeReport& r) {
  return Json{{"max_violation_first", r.max_violation_first},
              {"max_violation_second", r.max_violation_second},
              {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

Json to_json(const SpectrumReport& r) {
  std::vector<bool> flags(r.eigenvalues.size(), false);
  for (int i : r.spurious) flags[i] = true;
  return Json{{"eigenvalues", r.eigenvalues},
              {"distinct", r.distinct},
              {"multiplicities", r.multiplicities},
              {"spurious", r.spurious},
              {"spurious_flags", flags},
              {"residuals", r.residuals}};
}

std::string to_csv(const SpectrumReport& r) {
  std::vector<bool> flags(r.eigenvalues.size(), false);
  for (int i : r.spurious) flags[i] = true;
  std::ostringstream os;
  os << "index,eigenvalue,residual,boundary_mass,spurious\n";
  for (std::size_t i = 0; i < r.eigenvalues.size(); ++i)
    os << i << ',' << number(r.eigenvalues[i]) << ',' << number(r.residuals[i]) << ','
       << number(r.boundary_mass[i]) << ',' << (flags[i] ? 1 : 0) << '\n';
  return os.str();
}

Json to_json(const SweepReport& r) {
  return Json{{"label", r.label},
              {"sizes", r.sizes},
              {"margins", r.margins},
              {"values", r.values},
              {"section_norms", r.section_norms},
              {"essential_norms", r.essential_norms},
              {"stabilized", r.stabilized},
              {"section_stabilized", r.section_stabilized},
              {"trend", r.trend == Trend::growing ? "growing" : "bounded"}};
}

std::string to_csv(const SweepReport& r) {
  std::ostringstream os;
  os << "size,norm\n";
  for (std::size_t i = 0; i < r.sizes.size(); ++i)
    os << r.sizes[i] << ',' << number(r.values[i]) << '\n';
  return os.str();
}

Json to_json(const IndexReport& r) {
  return Json{{"index", r.index},
              {"exact", kernel_json(r.exact)},
              {"numeric_small", kernel_json(r.numeric_small)},
              {"numeric_large", kernel_json(r.numeric_large)},
              {"minus_plus_index", r.minus_plus_index},
              {"minus_plus_exact", kernel_json(r.minus_plus_exact)}};
}

Json to_json(const SummabilityDiagnostic& d) {
  return Json{{"epsilon", d.epsilon},
              {"K", d.K},
              {"partial_sum", d.partial_sum},
              {"doubled_sum", d.doubled_sum},
              {"doubling_increment", d.doubling_increment},
              {"tail_lower", d.tail_lower},
              {"tail_upper", d.tail_upper},
              {"extrapolated_limit", d.extrapolated_limit},
              {"trace_class", d.trace_class},
              {"verdict", d.verdict}};
}

}  // namespace ttorus

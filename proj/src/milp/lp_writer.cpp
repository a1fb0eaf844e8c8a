// Copyright 2026 The paamp Authors.
//
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

#include "paamp/milp/lp_writer.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <unordered_set>

#include "paamp/error.hpp"

namespace paamp::milp {
namespace {

constexpr int kTermsPerLine = 6;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  const auto head = static_cast<unsigned char>(s[0]);
  if (!(std::isalpha(head) || s[0] == '_')) return false;
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (!(std::isalnum(c) || ch == '_')) return false;
  }
  return true;
}

void write_expr(std::ostream& out, const std::vector<Term>& terms,
                const std::vector<Variable>& vars) {
  int on_line = 0;
  bool first = true;
  for (const Term& t : terms) {
    if (on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    const double mag = std::abs(t.coef);
    if (t.coef < 0) {
      out << (first ? "-" : " -");
    } else if (!first) {
      out << " +";
    }
    out << (first && t.coef >= 0 ? "" : " ");
    if (mag != 1.0) out << num(mag) << ' ';
    out << vars[t.var].name;
    first = false;
    ++on_line;
  }
}

}  // namespace

void write_lp(const MilpModel& model, std::ostream& out) {
  model.validate();
  const auto& vars = model.variables();
  std::unordered_set<std::string> seen;
  for (const Variable& v : vars) {
    if (!valid_name(v.name)) {
      throw Error(ErrorCode::kInvalidInput,
                  "variable name '" + v.name + "' is not LP-safe");
    }
    if (!seen.insert(v.name).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate name '" + v.name + "'");
    }
  }
  std::vector<std::string> row_names;
  for (int i = 0; i < model.num_constraints(); ++i) {
    std::string name = model.constraint(i).name;
    if (name.empty()) name = "c" + std::to_string(i);
    if (!valid_name(name)) {
      throw Error(ErrorCode::kInvalidInput,
                  "row name '" + name + "' is not LP-safe");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::kInvalidInput, "duplicate name '" + name + "'");
    }
    row_names.push_back(std::move(name));
  }

  out << "Minimize\n";
  std::vector<Term> obj;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.objective()[j] != 0.0) obj.push_back({j, model.objective()[j]});
  }
  out << "obj: ";
  if (obj.empty() && !vars.empty()) obj.push_back({0, 0.0});
  if (!obj.empty() && obj.front().coef == 0.0) {
    out << "0 " << vars[obj.front().var].name;
  } else {
    write_expr(out, obj, vars);
  }
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_constraints(); ++i) {
    const Constraint& c = model.constraint(i);
    out << row_names[i] << ": ";
    if (c.terms.empty()) {
      out << "0 " << vars.front().name;
    } else {
      write_expr(out, c.terms, vars);
    }
    switch (c.relation) {
      case Relation::kLessEqual:
        out << " <= ";
        break;
      case Relation::kGreaterEqual:
        out << " >= ";
        break;
      case Relation::kEqual:
        out << " = ";
        break;
    }
    out << num(c.rhs) << '\n';
  }
  out << "Bounds\n";
  for (const Variable& v : vars) {
    if (v.kind == VarKind::kBinary) {
      if (v.lower != 0.0 || v.upper != 1.0) {
        out << num(v.lower) << " <= " << v.name << " <= " << num(v.upper)
            << '\n';
      }
      continue;
    }
    const bool lo_inf = std::isinf(v.lower);
    const bool hi_inf = std::isinf(v.upper);
    if (lo_inf && hi_inf) {
      out << v.name << " free\n";
    } else if (v.lower == v.upper) {
      out << v.name << " = " << num(v.lower) << '\n';
    } else if (lo_inf) {
      out << "-inf <= " << v.name << " <= " << num(v.upper) << '\n';
    } else if (hi_inf) {
      if (v.lower != 0.0) out << v.name << " >= " << num(v.lower) << '\n';
    } else {
      out << num(v.lower) << " <= " << v.name << " <= " << num(v.upper)
          << '\n';
    }
  }
  out << "Binaries\n";
  for (const Variable& v : vars) {
    if (v.kind == VarKind::kBinary) out << v.name << '\n';
  }
  out << "End\n";
}

void export_lp(const MilpModel& model, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "'");
  }
  write_lp(model, file);
  file.flush();
  if (!file) {
    throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
  }
}

}  // namespace paamp::milp

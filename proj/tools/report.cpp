#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

namespace divpair::cli {

Json complex_json(cdouble z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string scalar(const Json& v) {
  switch (v.type()) {
    case Json::value_t::number_float: return format_double(v.get<double>());
    case Json::value_t::string: return Json(v.get<std::string>()).dump();
    default: return v.dump();
  }
}

void write(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) out << ",\n";
      first = false;
      out << pad << Json(it.key()).dump() << ": ";
      write(out, it.value(), indent + 2);
    }
    out << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      out << "[]";
      return;
    }
    out << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out << ",\n";
      out << pad;
      write(out, v[i], indent + 2);
    }
    out << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    out << scalar(v);
  }
}

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return quoted + "\"";
  }
  if (v.is_number_float()) {
    const std::string s = format_double(v.get<double>());
    return s.front() == '"' ? s.substr(1, s.size() - 2) : s;
  }
  return v.dump();
}

void flatten(const Json& v, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      flatten(v[i], prefix + "." + std::to_string(i), rows);
    }
  } else {
    rows.emplace_back(prefix, csv_cell(v));
  }
}

}  // namespace

void write_json(std::ostream& out, const Json& value) {
  write(out, value, 0);
  out << "\n";
}

void write_csv(std::ostream& out, const Json& report) {
  const Json* rows = nullptr;
  if (report.contains("outputs") && report["outputs"].contains("rows")) {
    rows = &report["outputs"]["rows"];
  }
  if (rows && rows->is_array() && !rows->empty() && (*rows)[0].is_object()) {
    bool first = true;
    for (auto it = (*rows)[0].begin(); it != (*rows)[0].end(); ++it) {
      out << (first ? "" : ",") << it.key();
      first = false;
    }
    out << "\n";
    for (const auto& row : *rows) {
      first = true;
      for (auto it = row.begin(); it != row.end(); ++it) {
        out << (first ? "" : ",") << csv_cell(it.value());
        first = false;
      }
      out << "\n";
    }
    return;
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(report, "", flat);
  out << "key,value\n";
  for (const auto& [k, v] : flat) out << k << "," << v << "\n";
}

}  // namespace divpair::cli

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace brown {

/// One verified assertion: pass iff observed <= tolerance (or an explicit flag).
struct CheckItem {
  std::string name;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct Report {
  std::string title;
  std::vector<CheckItem> items;

  void add(const std::string& name, double observed, double tolerance) {
    items.push_back({name, observed, tolerance, observed <= tolerance});
  }
  void add_flag(const std::string& name, bool ok, double observed = 0.0) {
    items.push_back({name, observed, 0.0, ok});
  }
  void merge(const Report& other) {
    items.insert(items.end(), other.items.begin(), other.items.end());
  }
  bool pass() const {
    return std::all_of(items.begin(), items.end(), [](const CheckItem& c) { return c.pass; });
  }
};

inline std::string report_to_string(const Report& r) {
  std::ostringstream os;
  os << r.title << ": " << (r.pass() ? "pass" : "FAIL") << "\n";
  for (const auto& c : r.items)
    os << "  [" << (c.pass ? "ok" : "FAIL") << "] " << c.name << " (observed " << c.observed
       << ", tolerance " << c.tolerance << ")\n";
  return os.str();
}

}  // namespace brown

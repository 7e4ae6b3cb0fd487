#pragma once

// Structured pass/fail records for the verification routines.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace periods {

struct CheckRecord {
  std::string name;
  double lhs = 0;
  double rhs = 0;
  double abs_err = 0;
  double rel_err = 0;
  bool pass = false;
};

class Report {
 public:
  /// Floating comparison: passes when |lhs - rhs| <= tol * max(|lhs|, |rhs|).
  template <class Real>
  void add_close(std::string name, Real lhs, Real rhs, Real tol) {
    const Real abs_err = std::abs(lhs - rhs);
    const Real scale = std::max(std::abs(lhs), std::abs(rhs));
    const Real rel_err = scale == Real(0) ? Real(0) : abs_err / scale;
    records_.push_back({std::move(name), double(lhs), double(rhs), double(abs_err),
                        double(rel_err), rel_err <= tol && std::isfinite(double(lhs)) &&
                                             std::isfinite(double(rhs))});
  }

  /// Exact comparison of integer-valued quantities.
  template <class Int>
  void add_exact(std::string name, const Int& lhs, const Int& rhs) {
    const double l = static_cast<double>(lhs), r = static_cast<double>(rhs);
    const double abs_err = std::abs(l - r);
    const double scale = std::max(std::abs(l), std::abs(r));
    records_.push_back({std::move(name), l, r, abs_err, scale == 0 ? 0 : abs_err / scale,
                        lhs == rhs});
  }

  void add(CheckRecord record) { records_.push_back(std::move(record)); }

  void append(const Report& other) {
    records_.insert(records_.end(), other.records_.begin(), other.records_.end());
  }

  const std::vector<CheckRecord>& records() const noexcept { return records_; }
  const CheckRecord& at(const std::string& name) const {
    auto it = std::find_if(records_.begin(), records_.end(),
                           [&](const CheckRecord& r) { return r.name == name; });
    if (it == records_.end()) throw std::out_of_range("no check named " + name);
    return *it;
  }

  std::size_t passed_count() const {
    return std::count_if(records_.begin(), records_.end(), [](const auto& r) { return r.pass; });
  }
  bool passed() const { return passed_count() == records_.size(); }

  /// One `check ...` line per record followed by a `summary ...` line.
  void write(std::ostream& os) const {
    for (const auto& r : records_)
      os << "check name=" << r.name << " lhs=" << format(r.lhs) << " rhs=" << format(r.rhs)
         << " abs_err=" << format(r.abs_err) << " rel_err=" << format(r.rel_err)
         << " pass=" << (r.pass ? "true" : "false") << '\n';
    os << "summary pass=" << (passed() ? "true" : "false") << " checks=" << records_.size()
       << " passed=" << passed_count() << " failed=" << records_.size() - passed_count() << '\n';
  }

  /// Shortest representation that round-trips.
  static std::string format(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
  }

 private:
  std::vector<CheckRecord> records_;
};

}  // namespace periods

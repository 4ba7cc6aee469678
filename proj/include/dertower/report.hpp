#pragma once

// Presentation of spectral sequence positions and plain text tables.
//
// Internally an entry sits at (s, n): filtration s, total degree n, with
// t = n - s and d_r : (s, n) -> (s + r, n + 1). Labelings:
//   paper2            (s, t)      d_r of bidegree (r, 1 - r)
//   paper3            (s, -t)     d_r of bidegree (r, r - 1)
//   sullivan-labels   (s, t + 2s) d_r of bidegree (r, r + 1)
// For a Sullivan tower the last one reads (generator degree, coefficient degree).

#include <algorithm>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dertower {

enum class Convention { paper2, paper3, sullivan_labels };

inline const char* to_string(Convention c)
{
  switch (c) {
    case Convention::paper2: return "paper2";
    case Convention::paper3: return "paper3";
    case Convention::sullivan_labels: return "sullivan-labels";
  }
  return "";
}

inline std::optional<Convention> parse_convention(const std::string& s)
{
  if (s == "paper2") return Convention::paper2;
  if (s == "paper3") return Convention::paper3;
  if (s == "sullivan-labels") return Convention::sullivan_labels;
  return std::nullopt;
}

inline std::pair<int, int> label(Convention c, int s, int n)
{
  const int t = n - s;
  switch (c) {
    case Convention::paper2: return {s, t};
    case Convention::paper3: return {s, -t};
    case Convention::sullivan_labels: return {s, t + 2 * s};
  }
  return {s, t};
}

// Inverse of label.
inline std::pair<int, int> position(Convention c, int s, int second)
{
  switch (c) {
    case Convention::paper2: return {s, second + s};
    case Convention::paper3: return {s, s - second};
    case Convention::sullivan_labels: return {s, second - s};
  }
  return {s, second + s};
}

inline std::pair<int, int> differential_bidegree(Convention c, int r)
{
  switch (c) {
    case Convention::paper2: return {r, 1 - r};
    case Convention::paper3: return {r, r - 1};
    case Convention::sullivan_labels: return {r, r + 1};
  }
  return {r, 1 - r};
}

inline std::string second_label(Convention c)
{
  return c == Convention::sullivan_labels ? "deg" : c == Convention::paper3 ? "-t" : "t";
}

// Aligned text table; columns right-aligned except the last.
class Table {
 public:
  explicit Table(std::vector<std::string> headers) : headers_(std::move(headers)) {}

  void add(std::vector<std::string> row)
  {
    if (row.size() != headers_.size()) throw std::logic_error("table row has the wrong width");
    rows_.push_back(std::move(row));
  }
  bool empty() const { return rows_.empty(); }

  std::string render() const
  {
    std::vector<std::size_t> width(headers_.size());
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    };
    measure(headers_);
    for (const auto& r : rows_) measure(r);
    std::ostringstream out;
    auto line = [&](const std::vector<std::string>& r) {
      std::string text;
      for (std::size_t i = 0; i < r.size(); ++i) {
        const std::string pad(width[i] - display_width(r[i]), ' ');
        const bool last = i + 1 == r.size();
        text += last ? r[i] : pad + r[i];
        if (!last) text += "  ";
      }
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out << text << "\n";
    };
    line(headers_);
    for (const auto& r : rows_) line(r);
    return out.str();
  }

 private:
  static std::size_t display_width(const std::string& s)
  {
    std::size_t n = 0;
    for (unsigned char c : s)
      if ((c & 0xC0) != 0x80) ++n;
    return n;
  }

  std::vector<std::string> headers_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace dertower

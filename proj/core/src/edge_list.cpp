#include "tlgcn/edge_list.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "tlgcn/errors.hpp"

namespace tlgcn {

EdgeFormat edge_format_from_string(const std::string& s) {
  if (s == "auto") return EdgeFormat::Auto;
  if (s == "csv") return EdgeFormat::Csv;
  if (s == "tsv") return EdgeFormat::Tsv;
  if (s == "whitespace" || s == "ws") return EdgeFormat::Whitespace;
  throw std::invalid_argument("unknown edge-list format '" + s + "'");
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  for (char c : line) {
    if (c == ' ' || c == '\t') continue;
    return c == '#' || c == '%';
  }
  return true;  // blank
}

void split_fields(std::string_view line, EdgeFormat fmt, std::vector<std::string_view>& out) {
  out.clear();
  if (fmt == EdgeFormat::Csv) {
    std::size_t start = 0;
    while (start <= line.size()) {
      std::size_t pos = line.find(',', start);
      if (pos == std::string_view::npos) pos = line.size();
      out.push_back(line.substr(start, pos - start));
      start = pos + 1;
      if (pos == line.size()) break;
    }
  } else {
    // tsv rows are handled by the generic splitter too: fields in these
    // datasets never contain spaces, so splitting on both is equivalent
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) out.push_back(line.substr(start, i - start));
    }
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
}

bool parse_double(std::string_view sv, double& v) {
  // trim
  while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
  while (!sv.empty() && (sv.back() == ' ' || sv.back() == '\t')) sv.remove_suffix(1);
  if (sv.empty()) return false;
  const char* first = sv.data();
  const char* last = sv.data() + sv.size();
  auto res = std::from_chars(first, last, v);
  return res.ec == std::errc() && res.ptr == last;
}

EdgeFormat detect_format(std::string_view line) {
  if (line.find(',') != std::string_view::npos) return EdgeFormat::Csv;
  if (line.find('\t') != std::string_view::npos) return EdgeFormat::Tsv;
  return EdgeFormat::Whitespace;
}

}  // namespace

EdgeList parse_edge_list(const std::string& text, EdgeFormat format) {
  EdgeList out;
  std::unordered_map<std::int64_t, std::uint32_t> id_map;
  std::vector<std::string_view> fields;

  std::istringstream is(text);
  std::string line;
  std::size_t line_no = 0;
  bool first_data_line = true;
  EdgeFormat fmt = format;

  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_comment_or_blank(line)) continue;

    if (fmt == EdgeFormat::Auto) fmt = detect_format(line);
    split_fields(line, fmt, fields);

    double src_raw, dst_raw, weight, ts_raw;
    bool ok = fields.size() == 4 && parse_double(fields[0], src_raw) &&
              parse_double(fields[1], dst_raw) && parse_double(fields[2], weight) &&
              parse_double(fields[3], ts_raw);
    if (!ok) {
      if (first_data_line) {
        // a single leading header row is tolerated
        first_data_line = false;
        continue;
      }
      throw ParseError("expected 'src dst weight timestamp'", line_no);
    }
    first_data_line = false;

    if (!std::isfinite(weight)) {
      throw ParseError("non-finite edge weight", line_no);
    }
    if (src_raw != std::floor(src_raw) || dst_raw != std::floor(dst_raw)) {
      throw ParseError("node ids must be integers", line_no);
    }

    auto intern = [&](double raw) -> std::uint32_t {
      auto id = static_cast<std::int64_t>(raw);
      auto [it, inserted] = id_map.try_emplace(id, static_cast<std::uint32_t>(out.original_id.size()));
      if (inserted) out.original_id.push_back(id);
      return it->second;
    };

    TemporalEdge e;
    e.src = intern(src_raw);
    e.dst = intern(dst_raw);
    e.weight = weight;
    e.timestamp = static_cast<std::int64_t>(std::llround(ts_raw));
    out.edges.push_back(e);
  }

  if (out.edges.empty()) {
    throw EmptyInputError("edge list contains no data rows");
  }
  return out;
}

EdgeList load_edge_list(const std::string& path, EdgeFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open edge list '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str(), format);
}

}  // namespace tlgcn

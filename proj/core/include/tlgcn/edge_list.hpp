#ifndef TLGCN_EDGE_LIST_HPP
#define TLGCN_EDGE_LIST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace tlgcn {

/// One raw weighted interaction: (src, dst, weight, timestamp). Node ids are
/// already remapped to the dense 0..n-1 range; weight is the regression
/// target, timestamps stay in raw dataset units.
struct TemporalEdge {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  double weight = 0.0;
  std::int64_t timestamp = 0;
};

enum class EdgeFormat { Auto, Csv, Tsv, Whitespace };

EdgeFormat edge_format_from_string(const std::string& s);

/// Edges in file order plus the retained id mapping: original_id[k] is the
/// raw dataset id renumbered to k (first-appearance order).
struct EdgeList {
  std::vector<TemporalEdge> edges;
  std::vector<std::int64_t> original_id;

  std::size_t node_count() const { return original_id.size(); }
};

/// Parses a delimited edge list, one "src dst weight timestamp" row per line.
/// Lines starting with '#' or '%' are skipped, as is a single leading header
/// row that fails numeric parsing. Throws ParseError (with line number) on a
/// malformed row and EmptyInputError when no edges remain.
EdgeList load_edge_list(const std::string& path, EdgeFormat format = EdgeFormat::Auto);

/// Same parser over an already-read buffer; used by tests and fixtures.
EdgeList parse_edge_list(const std::string& text, EdgeFormat format = EdgeFormat::Auto);

}  // namespace tlgcn

#endif  // TLGCN_EDGE_LIST_HPP
